"""Recursive-descent parser for lattice formulas.

Grammar (ASCII only)::

    expr   := term (("=>" | "<=>") expr)?
    term   := factor ("v" factor)*
    factor := atom ("^" atom)*
    atom   := "neg" atom | INT | OMEGA | "(" expr ")"
    OMEGA  := "Omega" | "Omega(" "{" primes "}" ")" | "Omega(" "~{" primes "}" ")"

``^`` is meet and ``v`` is join. Implication and equivalence are
right-associative and cannot be mixed without parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Union

from .divisors import Modulus, d_equiv, d_implies, d_join, d_meet, d_neg
from .supernatural import (
    ALL_PRIMES,
    PrimeSet,
    SupernaturalNumber,
    omega,
    sn_equiv,
    sn_from_natural,
    sn_implies,
    sn_join,
    sn_meet,
    sn_neg,
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}")
        self.message = message
        self.text = text
        self.pos = pos

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^ {self.message}"


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class OmegaLit:
    primes: PrimeSet = ALL_PRIMES


@dataclass(frozen=True)
class Neg:
    operand: Node


@dataclass(frozen=True)
class BinOp:
    op: str  # one of "^", "v", "=>", "<=>"
    left: Node
    right: Node


Node = Union[Int, OmegaLit, Neg, BinOp]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<omega>Omega(?:\s*\(\s*~?\{[\d,\s]*\}\s*\))?)
  | (?P<int>\d+)
  | (?P<neg>neg\b)
  | (?P<join>v\b)
  | (?P<op><=>|=>|\^|\(|\))
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group()
            toks.append((val if kind in ("op", "join", "neg") else kind, val, pos))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        raise ParseError(message, self.text, self.toks[self.i][2])

    def expr(self) -> Node:
        left = self.term()
        if self.peek() in ("=>", "<=>"):
            op = self.take()[0]
            start = self.i
            right = self.expr()
            if isinstance(right, BinOp) and right.op in ("=>", "<=>") and right.op != op:
                if self.toks[start][0] != "(":
                    self.i = start
                    self.fail(f"mixing '{op}' and '{right.op}' needs parentheses")
            return BinOp(op, left, right)
        return left

    def term(self) -> Node:
        node = self.factor()
        while self.peek() == "v":
            self.take()
            node = BinOp("v", node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        while self.peek() == "^":
            self.take()
            node = BinOp("^", node, self.atom())
        return node

    def atom(self) -> Node:
        kind, val, pos = self.toks[self.i]
        if kind == "neg":
            self.take()
            return Neg(self.atom())
        if kind == "int":
            self.take()
            return Int(int(val))
        if kind == "omega":
            self.take()
            m = re.search(r"(~?)\{([\d,\s]*)\}", val)
            if not m:
                return OmegaLit(ALL_PRIMES)
            primes = [int(t) for t in m.group(2).replace(" ", "").split(",") if t]
            try:
                return OmegaLit(PrimeSet(bool(m.group(1)), frozenset(primes)))
            except ValueError as exc:
                raise ParseError(str(exc), self.text, pos) from None
        if kind == "(":
            self.take()
            node = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return node
        self.fail("expected a number, Omega, 'neg' or '('" if kind != "end" else "unexpected end of input")


def parse(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    if p.peek() != "end":
        p.fail("unexpected token")
    return node


_PREC = {"=>": 1, "<=>": 1, "v": 2, "^": 3}


def render(node: Node) -> str:
    """Text that parses back to ``node``, with only the parentheses it needs."""
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, OmegaLit):
        return "Omega" if node.primes.is_all else f"Omega({node.primes})"
    if isinstance(node, Neg):
        inner = render(node.operand)
        return f"neg ({inner})" if isinstance(node.operand, BinOp) else f"neg {inner}"
    prec = _PREC[node.op]
    left, right = render(node.left), render(node.right)
    if isinstance(node.left, BinOp) and _PREC[node.left.op] <= prec and not (prec > 1 and _PREC[node.left.op] == prec):
        left = f"({left})"
    if isinstance(node.right, BinOp):
        rp = _PREC[node.right.op]
        same_chain = prec == 1 and node.right.op == node.op
        if rp < prec or (rp == prec and not same_chain):
            right = f"({right})"
    return f"{left} {node.op} {right}"


_SN_OPS = {"^": sn_meet, "v": sn_join, "=>": sn_implies, "<=>": sn_equiv}
_D_OPS = {"^": d_meet, "v": d_join, "=>": d_implies, "<=>": d_equiv}


def evaluate(node: Node, modulus: Modulus | None = None):
    """Evaluate in the supernatural lattice, or in D(n) when ``modulus`` is given.

    Inside D(n), ``Omega(pi)`` is the Hall divisor of ``n`` on ``pi``.
    """
    if isinstance(node, Int):
        if node.value < 1:
            raise ValueError("0 is not an element of the lattice")
        if modulus is None:
            return sn_from_natural(node.value)
        if modulus.n % node.value:
            raise ValueError(f"{node.value} does not divide {modulus.n}")
        return modulus.element(node.value)
    if isinstance(node, OmegaLit):
        if modulus is None:
            return omega(node.primes)
        return modulus.element(reduce(lambda acc, pe: acc * (pe[0] ** pe[1] if pe[0] in node.primes else 1), modulus.factorization, 1))
    if isinstance(node, Neg):
        val = evaluate(node.operand, modulus)
        return sn_neg(val) if modulus is None else d_neg(val)
    ops = _SN_OPS if modulus is None else _D_OPS
    return ops[node.op](evaluate(node.left, modulus), evaluate(node.right, modulus))


def eval_text(text: str, modulus: Modulus | None = None) -> SupernaturalNumber:
    return evaluate(parse(text), modulus)
