"""Supernatural (Steinitz) numbers and their Heyting algebra.

An element is an exponent function over all primes. Every element handled
here has a default exponent (``0`` or :data:`INF`) shared by all but finitely
many primes; the exceptions are stored explicitly. That is enough to close the
lattice under meet, join, implication, negation and equivalence, e.g. the
negation of a prime ``p`` is ``Omega(~{p})`` which has cofinitely many
infinite exponents.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping, Union

from .arith import factorize, is_prime

INF = math.inf

Exponent = Union[int, float]


def _check_exponent(e: Exponent) -> Exponent:
    if e == INF:
        return INF
    if isinstance(e, bool) or not float(e).is_integer() or e < 0:
        raise ValueError(f"exponent must be a non-negative integer or INF, got {e!r}")
    return int(e)


def _check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class PrimeSet:
    """A finite or cofinite set of primes.

    ``default_member`` says whether an unlisted prime belongs to the set;
    ``exceptions`` lists the primes whose membership is flipped.
    """

    default_member: bool = False
    exceptions: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "exceptions", frozenset(_check_prime(p) for p in self.exceptions))

    @classmethod
    def of(cls, primes: Iterable[int]) -> PrimeSet:
        return cls(False, frozenset(primes))

    @classmethod
    def all_except(cls, primes: Iterable[int] = ()) -> PrimeSet:
        return cls(True, frozenset(primes))

    def __contains__(self, p: int) -> bool:
        return (p in self.exceptions) != self.default_member

    @property
    def is_finite(self) -> bool:
        return not self.default_member

    @property
    def is_empty(self) -> bool:
        return not self.default_member and not self.exceptions

    @property
    def is_all(self) -> bool:
        return self.default_member and not self.exceptions

    def members(self) -> list[int]:
        if self.default_member:
            raise ValueError("a cofinite prime set cannot be listed")
        return sorted(self.exceptions)

    def _combine(self, other: PrimeSet, op: Callable[[bool, bool], bool]) -> PrimeSet:
        default = op(self.default_member, other.default_member)
        cand = self.exceptions | other.exceptions
        return PrimeSet(default, frozenset(p for p in cand if op(p in self, p in other) != default))

    def __or__(self, other: PrimeSet) -> PrimeSet:
        return self._combine(other, lambda x, y: x or y)

    def __and__(self, other: PrimeSet) -> PrimeSet:
        return self._combine(other, lambda x, y: x and y)

    def __sub__(self, other: PrimeSet) -> PrimeSet:
        return self & ~other

    def __invert__(self) -> PrimeSet:
        return PrimeSet(not self.default_member, self.exceptions)

    def __str__(self) -> str:
        body = "{" + ",".join(str(p) for p in sorted(self.exceptions)) + "}"
        return "~" + body if self.default_member else body


EMPTY_PRIMES = PrimeSet()
ALL_PRIMES = PrimeSet(True)


@dataclass(frozen=True)
class SupernaturalNumber:
    """Element of the lattice of supernatural numbers ordered by divisibility.

    Construction canonicalizes eagerly: exceptions equal to the default are
    dropped, so structural equality is value equality and instances hash.
    ``exceptions`` may be given as a mapping or as ``(prime, exponent)`` pairs.
    """

    default_exponent: Exponent = 0
    exceptions: tuple[tuple[int, Exponent], ...] = ()

    def __post_init__(self) -> None:
        default = self.default_exponent
        if default == INF:
            default = INF
        elif default == 0:
            default = 0
        else:
            raise ValueError(f"default exponent must be 0 or INF, got {default!r}")
        raw = self.exceptions
        items = raw.items() if isinstance(raw, Mapping) else raw
        exc: dict[int, Exponent] = {}
        for p, e in items:
            p = _check_prime(p)
            if p in exc:
                raise ValueError(f"prime {p} listed twice")
            exc[p] = _check_exponent(e)
        canon = tuple(sorted((p, e) for p, e in exc.items() if e != default))
        object.__setattr__(self, "default_exponent", default)
        object.__setattr__(self, "exceptions", canon)

    def exponent(self, p: int) -> Exponent:
        for q, e in self.exceptions:
            if q == p:
                return e
        return self.default_exponent

    @property
    def listed_primes(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.exceptions)

    @property
    def is_natural(self) -> bool:
        return self.default_exponent == 0 and all(e != INF for _, e in self.exceptions)

    @property
    def is_boolean(self) -> bool:
        """True for the elements Omega(pi), i.e. every exponent is 0 or INF."""
        return all(e in (0, INF) for _, e in self.exceptions)

    def to_int(self) -> int:
        if not self.is_natural:
            raise ValueError(f"{self} is not a natural number")
        return math.prod(p**e for p, e in self.exceptions)

    def finite_part(self) -> int:
        """Product of ``p**e`` over the primes with finite non-zero exponent."""
        return math.prod(p**e for p, e in self.exceptions if e not in (0, INF))

    def infinite_primes(self) -> PrimeSet:
        return varpi_partition(self)[1]

    def __str__(self) -> str:
        n = self.finite_part()
        inf = self.infinite_primes()
        if inf.is_empty:
            return str(n)
        om = "Omega" if inf.is_all else f"Omega({inf})"
        return om if n == 1 else f"{n}*{om}"


ONE = SupernaturalNumber(0)
OMEGA = SupernaturalNumber(INF)


def sn_from_natural(n: int) -> SupernaturalNumber:
    if n < 1:
        raise ValueError(f"only positive integers embed into N_S, got {n}")
    return SupernaturalNumber(0, factorize(n))


def omega(primes: PrimeSet | Iterable[int]) -> SupernaturalNumber:
    """The maximal pi-number: exponent INF on ``primes`` and 0 elsewhere."""
    if not isinstance(primes, PrimeSet):
        primes = PrimeSet.of(primes)
    if primes.default_member:
        return SupernaturalNumber(INF, {p: 0 for p in primes.exceptions})
    return SupernaturalNumber(0, {p: INF for p in primes.exceptions})


def _pointwise(f: Callable[..., Exponent], *xs: SupernaturalNumber) -> SupernaturalNumber:
    default = f(*(x.default_exponent for x in xs))
    primes = frozenset().union(*(x.listed_primes for x in xs))
    return SupernaturalNumber(default, {p: f(*(x.exponent(p) for x in xs)) for p in primes})


def _where(pred: Callable[[Exponent, Exponent], bool], a: SupernaturalNumber, b: SupernaturalNumber) -> PrimeSet:
    default = pred(a.default_exponent, b.default_exponent)
    primes = a.listed_primes | b.listed_primes
    return PrimeSet(default, frozenset(p for p in primes if pred(a.exponent(p), b.exponent(p)) != default))


def sn_divides(a: SupernaturalNumber, b: SupernaturalNumber) -> bool:
    if a.default_exponent > b.default_exponent:
        # some unlisted prime breaks the order
        return False
    return all(a.exponent(p) <= b.exponent(p) for p in a.listed_primes | b.listed_primes)


def sn_meet(*xs: SupernaturalNumber) -> SupernaturalNumber:
    """Generalized GCD of any number of arguments; the empty meet is Omega."""
    if not xs:
        return OMEGA
    return _pointwise(min, *xs)


def sn_join(*xs: SupernaturalNumber) -> SupernaturalNumber:
    """Generalized LCM of any number of arguments; the empty join is 1."""
    if not xs:
        return ONE
    return _pointwise(max, *xs)


def _imp(x: Exponent, y: Exponent) -> Exponent:
    return INF if y >= x else y


def sn_implies(a: SupernaturalNumber, b: SupernaturalNumber) -> SupernaturalNumber:
    """Relative pseudocomplement: the largest x with gcd(a, x) | b."""
    return _pointwise(_imp, a, b)


def sn_neg(a: SupernaturalNumber) -> SupernaturalNumber:
    return sn_implies(a, ONE)


def sn_equiv(a: SupernaturalNumber, b: SupernaturalNumber) -> SupernaturalNumber:
    # INF where exponents agree, the smaller exponent elsewhere
    return _pointwise(lambda x, y: INF if x == y else min(x, y), a, b)


def sn_product(*xs: SupernaturalNumber) -> SupernaturalNumber:
    """Ordinary product (exponents add)."""
    if not xs:
        return ONE
    return _pointwise(lambda *es: sum(es), *xs)


def varpi(a: SupernaturalNumber) -> PrimeSet:
    f, i = varpi_partition(a)
    return f | i


def varpi_partition(a: SupernaturalNumber) -> tuple[PrimeSet, PrimeSet]:
    """Split the prime support of ``a`` into finite-exponent and infinite-exponent primes."""
    finite = PrimeSet.of(p for p, e in a.exceptions if e not in (0, INF))
    if a.default_exponent == INF:
        infinite = PrimeSet.all_except(a.listed_primes)
    else:
        infinite = PrimeSet.of(p for p, e in a.exceptions if e == INF)
    return finite, infinite


def varpi_compare(a: SupernaturalNumber, b: SupernaturalNumber) -> tuple[PrimeSet, PrimeSet, PrimeSet]:
    """Primes where e_p(a) > e_p(b), where they are equal, and where e_p(b) > e_p(a)."""
    return (
        _where(lambda x, y: x > y, a, b),
        _where(lambda x, y: x == y, a, b),
        _where(lambda x, y: x < y, a, b),
    )


# -- text literals ----------------------------------------------------------

_SET_RE = r"(~?)\{\s*([0-9,\s]*)\}"
_FACTOR_RE = re.compile(
    rf"\s*(?:Omega\s*(?:\(\s*{_SET_RE}\s*\))?|(\d+)(?:\s*\^\s*(inf|\d+))?)\s*"
)


def parse_prime_set(text: str) -> PrimeSet:
    m = re.fullmatch(r"\s*" + _SET_RE + r"\s*", text)
    if not m:
        raise ValueError(f"bad prime set {text!r}")
    return _prime_set_from_match(m.group(1), m.group(2))


def _prime_set_from_match(tilde: str, body: str) -> PrimeSet:
    primes = [int(tok) for tok in body.replace(" ", "").split(",") if tok]
    return PrimeSet(bool(tilde), frozenset(primes))


def parse_supernatural(text: str) -> SupernaturalNumber:
    """Parse ``900``, ``2^inf*3^2``, ``Omega``, ``Omega({2,3})``, ``5*Omega(~{2,3,5})``."""
    factors = []
    for chunk in text.split("*"):
        m = _FACTOR_RE.fullmatch(chunk)
        if not m:
            raise ValueError(f"bad supernatural literal {text!r} near {chunk.strip()!r}")
        tilde, body, base, power = m.groups()
        if base is None:
            primes = ALL_PRIMES if body is None else _prime_set_from_match(tilde, body)
            factors.append(omega(primes))
            continue
        n = int(base)
        if n < 1:
            raise ValueError(f"0 is not a supernatural number (in {text!r})")
        if power == "inf":
            factors.append(omega(p for p, _ in factorize(n)) if n > 1 else ONE)
        else:
            e = 1 if power is None else int(power)
            factors.append(SupernaturalNumber(0, {p: k * e for p, k in factorize(n)}))
    return sn_product(*factors)


# -- group rendering ----------------------------------------------------------


class GroupKind(Enum):
    CYCLIC_FINITE = "cyclic_finite"
    PRUFER = "prufer"
    DIRECT_SUM_PRUFER = "direct_sum_prufer"
    PADIC = "padic"
    PRODUCT_PADIC = "product_padic"
    MIXED = "mixed"


@dataclass(frozen=True)
class GroupDescription:
    """Symbolic label for C(a) (``dual=False``) or its Pontryagin dual (``dual=True``)."""

    kind: GroupKind
    finite_part: SupernaturalNumber
    infinite_primes: PrimeSet
    dual: bool

    def render(self, unicode: bool = False) -> str:
        n = self.finite_part.to_int()
        pi = self.infinite_primes
        if pi.is_empty:
            return f"Z({n})"
        inf = _render_infinite(pi, self.dual, unicode)
        if n == 1:
            return inf
        if not pi.is_finite or len(pi.exceptions) > 1:
            inf = f"({inf})"
        times = " × " if unicode else " x "
        return f"Z({n}){times}{inf}"

    def __str__(self) -> str:
        return self.render()


def _render_infinite(pi: PrimeSet, dual: bool, unicode: bool) -> str:
    if pi.is_finite:
        ps = pi.members()
        if dual:
            return (" × " if unicode else " x ").join(f"Z_{p}" for p in ps)
        return (" ⊕ " if unicode else " (+) ").join(f"Q_{p}/Z_{p}" for p in ps)
    if pi.is_all:
        if unicode:
            return "Ẑ ≅ ∏_p Z_p" if dual else "Q/Z ≅ ⊕_p Q_p/Z_p"
        return "Zhat ~= prod_p Z_p" if dual else "Q/Z ~= (+)_p Q_p/Z_p"
    excl = "{" + ",".join(str(p) for p in sorted(pi.exceptions)) + "}"
    if unicode:
        return f"∏_{{p∉{excl}}} Z_p" if dual else f"⊕_{{p∉{excl}}} Q_p/Z_p"
    return f"prod_{{p not in {excl}}} Z_p" if dual else f"(+)_{{p not in {excl}}} Q_p/Z_p"


def render_group(a: SupernaturalNumber, dual: bool = False) -> GroupDescription:
    """Describe C(a) as (finite cyclic part) x (sum of Prufer groups), or its dual."""
    finite = sn_from_natural(a.finite_part())
    pi = a.infinite_primes()
    if pi.is_empty:
        kind = GroupKind.CYCLIC_FINITE
    elif finite != ONE:
        kind = GroupKind.MIXED
    elif pi.is_finite and len(pi.exceptions) == 1:
        kind = GroupKind.PADIC if dual else GroupKind.PRUFER
    else:
        kind = GroupKind.PRODUCT_PADIC if dual else GroupKind.DIRECT_SUM_PRUFER
    return GroupDescription(kind, finite, pi, dual)


def universe_elements(primes: Iterable[int], exponents: Iterable[Exponent], max_exceptions: int | None = None):
    """Yield every element whose exceptions lie on ``primes`` with values from ``exponents``.

    Both defaults are covered. Used to drive exhaustive law checks.
    """
    from itertools import combinations, product

    primes = list(primes)
    exponents = list(exponents)
    limit = len(primes) if max_exceptions is None else max_exceptions
    for default in (0, INF):
        others = [e for e in exponents if e != default]
        for k in range(limit + 1):
            for ps in combinations(primes, k):
                for es in product(others, repeat=k):
                    yield SupernaturalNumber(default, dict(zip(ps, es)))


__all__ = [
    "INF",
    "ONE",
    "OMEGA",
    "ALL_PRIMES",
    "EMPTY_PRIMES",
    "PrimeSet",
    "SupernaturalNumber",
    "GroupKind",
    "GroupDescription",
    "sn_from_natural",
    "omega",
    "sn_divides",
    "sn_meet",
    "sn_join",
    "sn_implies",
    "sn_neg",
    "sn_equiv",
    "sn_product",
    "varpi",
    "varpi_partition",
    "varpi_compare",
    "parse_supernatural",
    "parse_prime_set",
    "render_group",
    "universe_elements",
]
