"""Command-line front end.

Exit codes: 0 success (no violation), 1 input error, 2 inequality violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .contextuality import SearchConfig, bell_check, example_density, search
from .divisors import DEFAULT_CAP, DivisorElement, hasse_edges, make_modulus, table_csv, to_dot
from .expr import ParseError, evaluate, parse
from .quantum import InvalidState, load_density, tau, tau_tilde
from .supernatural import render_group, sn_from_natural

EXIT_OK, EXIT_INPUT, EXIT_VIOLATED = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _modulus(n: int):
    try:
        return make_modulus(n, DEFAULT_CAP)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_eval(args) -> int:
    try:
        tree = parse(args.expr)
    except ParseError as exc:
        raise InputError(f"parse error\n{exc.caret()}") from None
    mod = _modulus(args.n) if args.n is not None else None
    try:
        value = evaluate(tree, mod)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(value)
    if args.as_group:
        sn = sn_from_natural(value.value) if isinstance(value, DivisorElement) else value
        print(f"C = {render_group(sn, dual=False)}")
        print(f"dual = {render_group(sn, dual=True)}")
    return EXIT_OK


def cmd_table(args) -> int:
    mod = _modulus(args.n)
    ops = args.op.split(",") if args.op else None
    try:
        sys.stdout.write(table_csv(mod, ops))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK


def cmd_hasse(args) -> int:
    mod = _modulus(args.n)
    dot = to_dot(mod)
    if args.dot:
        try:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(dot)
        except OSError as exc:
            raise InputError(f"cannot write {args.dot}: {exc.strerror}") from None
        print(f"{len(mod.divisor_list)} nodes, {len(hasse_edges(mod))} edges -> {args.dot}")
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def _density(args):
    if args.rho:
        try:
            rho = load_density(args.rho)
        except OSError as exc:
            raise InputError(f"cannot read {args.rho}: {exc.strerror}") from None
        label = args.rho
    elif args.a is not None and args.b is not None:
        try:
            rho = example_density(args.a, args.b, args.n if args.n is not None else 900)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        label = f"example:a={args.a!r},b={args.b!r}"
    else:
        raise InputError("give --rho FILE or both --a and --b")
    if args.n is not None and rho.dim != args.n:
        raise InputError(f"state has dimension {rho.dim} but --n is {args.n}")
    return rho, label


def cmd_bell(args) -> int:
    rho, label = _density(args)
    try:
        report = bell_check(args.m, rho, rho_label=label)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(report.to_json())
    return EXIT_VIOLATED if report.violated else EXIT_OK


def cmd_tau(args) -> int:
    rho, _ = _density(args)
    out = {}
    for m in args.m:
        try:
            out[str(m)] = {"tau": tau(m, rho), "tau_tilde": tau_tilde(m, rho)}
        except ValueError as exc:
            raise InputError(str(exc)) from None
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_search(args) -> int:
    config = SearchConfig(seed=args.seed, max_len=args.max_len, grid=args.grid, samples=args.samples)
    try:
        result = search(args.n, config)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.csv:
        try:
            with open(args.csv, "w", encoding="utf-8") as fh:
                fh.write(result.csv())
        except OSError as exc:
            raise InputError(f"cannot write {args.csv}: {exc.strerror}") from None
    print(result.best.to_json())
    return EXIT_VIOLATED if result.best.violated else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heytingq", description="Heyting algebras of divisors and logical Bell inequalities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate a lattice formula")
    e.add_argument("expr", help='e.g. "neg 10", "10 => 75", "Omega({2,3}) ^ 12"')
    e.add_argument("--n", type=int, help="evaluate in D(n) instead of the supernatural numbers")
    e.add_argument("--as-group", action="store_true", help="also print the group C(a) and its dual")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("table", help="CSV truth table over D(n) x D(n)")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--op", help="comma-separated subset of meet,join,implies,equiv")
    t.set_defaults(func=cmd_table)

    h = sub.add_parser("hasse", help="Hasse diagram of D(n) in DOT")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--dot", metavar="FILE", help="write to FILE instead of stdout")
    h.set_defaults(func=cmd_hasse)

    for name, func, helptext in (
        ("bell", cmd_bell, "check the logical Bell inequality for a tuple of divisors"),
        ("tau", cmd_tau, "probabilities tau(m) and tau~(m) for each m"),
    ):
        b = sub.add_parser(name, help=helptext)
        b.add_argument("--n", type=int)
        b.add_argument("--m", type=_int_list, required=True, metavar="a,b,c")
        b.add_argument("--rho", metavar="FILE", help="density matrix JSON")
        b.add_argument("--a", type=float, help="weight on |180> of the n=900 example state")
        b.add_argument("--b", type=float, help="weight on |25> of the n=900 example state")
        b.set_defaults(func=func)

    s = sub.add_parser("search", help="search tuples and states for a violation")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--grid", type=int, default=20)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--csv", metavar="FILE", help="write every candidate tuple's best margin")
    s.set_defaults(func=cmd_search)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidState as exc:
        print(f"error: invalid density matrix, failed invariant {exc}", file=sys.stderr)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
