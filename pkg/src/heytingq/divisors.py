"""The finite Heyting algebra of divisors of a fixed modulus ``n``.

Meet is GCD, join is LCM, bottom is 1 and top is ``n``. The Hall divisors
(``m`` with ``gcd(m, n/m) == 1``) form the Boolean subalgebra.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .arith import divisors, factorize, lcm, totient

DEFAULT_CAP = 10**6


class ModulusMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Modulus:
    n: int
    factorization: tuple[tuple[int, int], ...] = field(compare=False, repr=False)
    divisor_list: tuple[int, ...] = field(compare=False, repr=False)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factorization)

    def exponent(self, p: int) -> int:
        return dict(self.factorization).get(p, 0)

    def element(self, value: int) -> DivisorElement:
        return DivisorElement(int(value), self)

    def elements(self) -> list[DivisorElement]:
        return [DivisorElement(d, self) for d in self.divisor_list]

    @property
    def top(self) -> DivisorElement:
        return DivisorElement(self.n, self)

    @property
    def bottom(self) -> DivisorElement:
        return DivisorElement(1, self)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factorization)


@lru_cache(maxsize=256)
def _build_modulus(n: int) -> Modulus:
    return Modulus(n, factorize(n), tuple(divisors(n)))


def make_modulus(n: int, cap: int = DEFAULT_CAP) -> Modulus:
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    if n > cap:
        raise ValueError(f"modulus {n} exceeds the cap {cap}")
    return _build_modulus(int(n))


@dataclass(frozen=True)
class DivisorElement:
    value: int
    modulus: Modulus
    factorization: tuple[tuple[int, int], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.value < 1 or self.modulus.n % self.value:
            raise ValueError(f"{self.value} does not divide {self.modulus.n}")
        fact = []
        for p, _ in self.modulus.factorization:
            e, v = 0, self.value
            while v % p == 0:
                v //= p
                e += 1
            if e:
                fact.append((p, e))
        object.__setattr__(self, "factorization", tuple(fact))

    def exponent(self, p: int) -> int:
        for q, e in self.factorization:
            if q == p:
                return e
        return 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def _same(*xs: DivisorElement) -> Modulus:
    mod = xs[0].modulus
    for x in xs[1:]:
        if x.modulus != mod:
            raise ModulusMismatch(f"divisors of {mod.n} and {x.modulus.n} cannot be combined")
    return mod


def divides(a: DivisorElement, b: DivisorElement) -> bool:
    _same(a, b)
    return b.value % a.value == 0


def d_meet(*xs: DivisorElement) -> DivisorElement:
    mod = _same(*xs)
    return DivisorElement(math.gcd(*(x.value for x in xs)), mod)


def d_join(*xs: DivisorElement) -> DivisorElement:
    mod = _same(*xs)
    return DivisorElement(math.lcm(*(x.value for x in xs)), mod)


def d_implies(a: DivisorElement, b: DivisorElement) -> DivisorElement:
    """Full power of ``p`` where ``e_p(b) >= e_p(a)``, otherwise ``p**e_p(b)``."""
    mod = _same(a, b)
    v = 1
    for p, e in mod.factorization:
        eb = b.exponent(p)
        v *= p ** (e if eb >= a.exponent(p) else eb)
    return DivisorElement(v, mod)


def d_neg(a: DivisorElement) -> DivisorElement:
    """Hall divisor of ``n`` on the primes not dividing ``a``."""
    mod = a.modulus
    v = 1
    for p, e in mod.factorization:
        if a.value % p:
            v *= p**e
    return DivisorElement(v, mod)


def d_equiv(a: DivisorElement, b: DivisorElement) -> DivisorElement:
    return d_meet(d_implies(a, b), d_implies(b, a))


def is_hall(a: DivisorElement) -> bool:
    return math.gcd(a.value, a.modulus.n // a.value) == 1


def hall_divisors(modulus: Modulus) -> tuple[DivisorElement, ...]:
    return tuple(e for e in modulus.elements() if is_hall(e))


def is_chain(ms: Iterable[DivisorElement]) -> bool:
    ms = list(ms)
    if ms:
        _same(*ms)
    return all(a.value % b.value == 0 or b.value % a.value == 0 for a, b in combinations(ms, 2))


def enumerate_maximal_chains(modulus: Modulus) -> list[tuple[DivisorElement, ...]]:
    """Every saturated chain from 1 to ``n``, in lexicographic order of values.

    Each chain has ``sum(e_p) + 1`` members.
    """
    out: list[tuple[int, ...]] = []

    def walk(chain: list[int]) -> None:
        cur = chain[-1]
        if cur == modulus.n:
            out.append(tuple(chain))
            return
        for p in modulus.primes:
            if (modulus.n // cur) % p == 0:
                chain.append(cur * p)
                walk(chain)
                chain.pop()

    walk([1])
    return [tuple(DivisorElement(v, modulus) for v in c) for c in out]


def hasse_edges(modulus: Modulus) -> list[tuple[DivisorElement, DivisorElement]]:
    """Covering pairs ``(a, b)``: ``b / a`` is prime. Sorted by ``(a, b)``."""
    edges = [
        (d, d * p)
        for d in modulus.divisor_list
        for p in modulus.primes
        if (modulus.n // d) % p == 0
    ]
    return [(DivisorElement(a, modulus), DivisorElement(b, modulus)) for a, b in sorted(edges)]


def to_dot(modulus: Modulus) -> str:
    """Hasse diagram as a DOT digraph; Hall divisors get ``shape=box``."""
    lines = ["digraph {"]
    for d in modulus.divisor_list:
        style = " [shape=box]" if math.gcd(d, modulus.n // d) == 1 else ""
        lines.append(f'  "{d}"{style};')
    for a, b in hasse_edges(modulus):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


CONNECTIVES = {
    "meet": d_meet,
    "join": d_join,
    "implies": d_implies,
    "equiv": d_equiv,
}


def connective_table(modulus: Modulus, ops: Sequence[str] | None = None) -> list[list[int]]:
    """Rows ``[a, b, op1(a,b), ...]`` over D(n) x D(n), sorted by ``(a, b)``."""
    ops = list(CONNECTIVES) if ops is None else list(ops)
    for op in ops:
        if op not in CONNECTIVES:
            raise ValueError(f"unknown connective {op!r}; choose from {', '.join(CONNECTIVES)}")
    elems = modulus.elements()
    return [
        [a.value, b.value, *(CONNECTIVES[op](a, b).value for op in ops)]
        for a in elems
        for b in elems
    ]


def table_csv(modulus: Modulus, ops: Sequence[str] | None = None) -> str:
    ops = list(CONNECTIVES) if ops is None else list(ops)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", *ops])
    w.writerows(connective_table(modulus, ops))
    return buf.getvalue()


__all__ = [
    "DEFAULT_CAP",
    "Modulus",
    "DivisorElement",
    "ModulusMismatch",
    "make_modulus",
    "divides",
    "d_meet",
    "d_join",
    "d_implies",
    "d_neg",
    "d_equiv",
    "is_hall",
    "hall_divisors",
    "is_chain",
    "enumerate_maximal_chains",
    "hasse_edges",
    "to_dot",
    "connective_table",
    "table_csv",
    "totient",
    "lcm",
]
