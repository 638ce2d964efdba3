"""Chains as contexts, logical Bell inequalities with Heyting factors, violation search.

For divisors ``m_1..m_l`` of ``n`` (none equal to 1) the inequality reads::

    sum_i tau~(m_i) <= l - tau(r) - sum_i f_i
    r   = neg(m_1 ^ ... ^ m_l)
    f_i = 1 - tau(m_i v neg m_i)

It holds whenever the probabilities obey the classical valuation law, which
quantum probabilities do only along chains of D(n).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .divisors import (
    DivisorElement,
    Modulus,
    d_join,
    d_meet,
    d_neg,
    is_chain,
    make_modulus,
)
from .quantum import (
    DensityMatrix,
    ProjectorKind,
    projector,
    tau,
    tau_tilde,
)

EPS_VIOLATION = 1e-9
EPS_PROB = 1e-9


def _as_elements(ms: Iterable[DivisorElement | int], modulus: Modulus) -> list[DivisorElement]:
    out = []
    for m in ms:
        if isinstance(m, DivisorElement):
            if m.modulus != modulus:
                raise ValueError(f"{m.value} belongs to D({m.modulus.n}), not D({modulus.n})")
            out.append(m)
        else:
            out.append(modulus.element(int(m)))
    return out


@dataclass(frozen=True)
class Context:
    """A chain of D(n): every pair is comparable, so every S(m_i, m_j) is zero."""

    modulus: Modulus
    members: tuple[DivisorElement, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(_as_elements(self.members, self.modulus), key=int))
        if not is_chain(members):
            raise ValueError(f"{[m.value for m in members]} is not a chain")
        for a, b in combinations(members, 2):
            if projector(ProjectorKind.S, (a.value, b.value), self.modulus.n).mask.any():
                raise ValueError(f"S({a}, {b}) is not empty")
        object.__setattr__(self, "members", members)


def is_context(ms: Iterable[DivisorElement]) -> bool:
    """True iff ``ms`` is a chain, i.e. dim S(m_i, m_j) = 0 for every pair."""
    return is_chain(ms)


def heyting_factor(m: int, rho: DensityMatrix) -> float:
    """``1 - tau(m v neg m)``; zero when ``m`` is a Hall divisor of ``n``."""
    mod = make_modulus(rho.dim)
    a = mod.element(m)
    return 1.0 - tau(d_join(a, d_neg(a)).value, rho)


def pseudo_distance(m: int, k: int, rho: DensityMatrix) -> float:
    g, l = math.gcd(m, k), math.lcm(m, k)
    return tau_tilde(l, rho) - tau_tilde(g, rho)


@dataclass(frozen=True)
class MemberReport:
    m: int
    neg: int
    join_neg: int
    tau_tilde: float
    tau_join_neg: float
    f: float

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "neg": self.neg,
            "join_neg": self.join_neg,
            "tau_tilde": self.tau_tilde,
            "tau_join_neg": self.tau_join_neg,
            "f": self.f,
        }


@dataclass(frozen=True)
class BellReport:
    n: int
    tuple: tuple[int, ...]
    members: tuple[MemberReport, ...]
    meet: int
    r: int
    tau_r: float
    lhs: float
    bound: float
    margin: float
    violated: bool
    rho: str | None = field(default=None)

    @property
    def heyting_factors(self) -> tuple[float, ...]:
        return tuple(mr.f for mr in self.members)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "tuple": list(self.tuple),
            "members": [mr.to_dict() for mr in self.members],
            "meet": self.meet,
            "r": self.r,
            "tau_r": self.tau_r,
            "lhs": self.lhs,
            "bound": self.bound,
            "margin": self.margin,
            "violated": self.violated,
        }
        if self.rho is not None:
            out["rho"] = self.rho
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def bell_check(ms: Sequence[DivisorElement | int], rho: DensityMatrix, rho_label: str | None = None) -> BellReport:
    """Evaluate both sides of the logical Bell inequality for ``ms`` on ``rho``."""
    mod = make_modulus(rho.dim)
    elems = _as_elements(ms, mod)
    if not elems:
        raise ValueError("need at least one divisor")
    for a in elems:
        if a.value == 1:
            raise ValueError("the divisor 1 is excluded from the inequality")
    members = []
    for a in elems:
        neg = d_neg(a)
        jn = d_join(a, neg)
        t_join = tau(jn.value, rho)
        members.append(MemberReport(a.value, neg.value, jn.value, tau_tilde(a.value, rho), t_join, 1.0 - t_join))
    meet = d_meet(*elems)
    r = d_neg(meet)
    tau_r = tau(r.value, rho)
    ell = len(elems)
    lhs = sum(mr.tau_tilde for mr in members)
    bound = ell - tau_r - sum(mr.f for mr in members)
    margin = lhs - bound
    return BellReport(
        n=mod.n,
        tuple=tuple(a.value for a in elems),
        members=tuple(members),
        meet=meet.value,
        r=r.value,
        tau_r=tau_r,
        lhs=lhs,
        bound=bound,
        margin=margin,
        violated=margin > EPS_VIOLATION,
        rho=rho_label,
    )


def example_density(a: float, b: float, n: int = 900) -> DensityMatrix:
    """``a|180><180| + b|25><25| + (1-a-b)|5><5|`` on H(900), embedded into H(n) for ``900 | n``."""
    if n % 900:
        raise ValueError(f"the example state lives on H(900); n={n} is not a multiple of 900")
    c = 1.0 - a - b
    for name, v in (("a", a), ("b", b), ("1-a-b", c)):
        if v < -EPS_PROB or v > 1 + EPS_PROB:
            raise ValueError(f"{name}={v} is not a probability")
    diag = np.zeros(n)
    d = n // 900
    diag[180 * d] += a
    diag[25 * d] += b
    diag[5 * d] += c
    return DensityMatrix(n, diag)


# -- search -------------------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for :func:`search_violation`.

    ``grid`` is the resolution of the diagonal grid over sector representatives
    and ``grid_support`` the most representatives mixed in one grid point.
    ``explicit_grid`` enumerates every grid point instead of its vertices.
    """

    seed: int = 0
    max_len: int = 4
    grid: int = 20
    grid_support: int = 3
    samples: int = 1000
    explicit_grid: bool = False
    max_tuples: int = 2_000_000


@dataclass(frozen=True)
class SearchResult:
    best: BellReport
    rows: tuple[tuple[tuple[int, ...], float, str], ...]

    def csv(self) -> str:
        lines = ["tuple,margin,violated,rho"]
        for t, margin, label in self.rows:
            lines.append(f"{' '.join(map(str, t))},{margin!r},{str(margin > EPS_VIOLATION).lower()},{label}")
        return "\n".join(lines) + "\n"


def candidate_tuples(modulus: Modulus, max_len: int) -> list[tuple[int, ...]]:
    """Tuples of 2..max_len divisors (1 excluded) containing an incomparable pair.

    When D(n) is a chain no such tuple exists, and every tuple of up to
    ``max_len`` divisors is returned instead.
    """
    pool = [d for d in modulus.divisor_list if d != 1]
    sized = [t for k in range(2, max_len + 1) for t in combinations(pool, k)]
    found = [t for t in sized if any(a % b and b % a for a, b in combinations(t, 2))]
    return found or [t for k in range(1, max_len + 1) for t in combinations(pool, k)]


def _sector_margins(modulus: Modulus, tuples: list[tuple[int, ...]]) -> np.ndarray:
    """Margin of every tuple on a pure position state from each sector.

    Row ``i``, column ``j`` is the margin of ``tuples[i]`` on a basis state whose
    index lies in the sector of divisor ``divisor_list[j]``. A basis state in
    sector ``s`` lies under P(m) iff ``s | m``, so the margin is a signed count.
    """
    divs = modulus.divisor_list
    pos = {d: i for i, d in enumerate(divs)}
    arr = np.array(divs)
    # under[j, i]: sector divs[j] lies in H(divs[i])
    under = (arr[None, :] % arr[:, None] == 0).astype(np.int64)
    join_neg = np.array([pos[d_join(e, d_neg(e)).value] for e in modulus.elements()])
    neg = np.array([pos[d_neg(e).value] for e in modulus.elements()])
    out = np.zeros((len(tuples), len(divs)))
    by_len: dict[int, list[int]] = {}
    for i, t in enumerate(tuples):
        by_len.setdefault(len(t), []).append(i)
    for ell, rows in by_len.items():
        idx = np.array([[pos[m] for m in tuples[i]] for i in rows])
        meet = np.gcd.reduce(arr[idx], axis=1)
        r = neg[[pos[int(g)] for g in meet]]
        v = under[:, idx].sum(axis=2).T  # sum_i tau(m_i)
        v = v - under[:, join_neg[idx]].sum(axis=2).T  # - sum_i tau(m_i v neg m_i)
        v = v + under[:, r].T  # + tau(r)
        v[:, 0] -= ell  # - l * tau(1)
        out[rows] = v
    return out


def _grid_points(n_sectors: int, resolution: int, support: int):
    """Yield ``(sectors, weights)`` for every grid point, fewest sectors first."""
    for k in range(1, min(support, n_sectors) + 1):
        for secs in combinations(range(n_sectors), k):
            for comp in _compositions(resolution, k):
                yield secs, tuple(c / resolution for c in comp)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _random_diagonals(n: int, seed: int, k: int) -> np.ndarray:
    # diagonal of G G^dagger / Tr for an n x n complex Gaussian G: i.i.d. Gamma(n) then normalized
    g = np.random.default_rng([seed, k]).gamma(shape=n, size=n)
    return g / g.sum()


def _sector_index(modulus: Modulus) -> np.ndarray:
    n = modulus.n
    pos = {d: i for i, d in enumerate(modulus.divisor_list)}
    return np.array([pos[n // math.gcd(r, n)] for r in range(n)])


def search(n: int, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Best violation of the inequality over candidate tuples and states on H(n).

    The margin is linear in the diagonal of rho and, for a basis state, depends
    only on the sector of its index. So each grid point is scored through the
    per-sector margins, and the grid maximum sits on a vertex. The random
    Ginibre states enter through their diagonals only.

    Ties break on (margin desc, tuple, state descriptor), with grid states
    ordered before random ones and fewer mixed sectors first.
    """
    modulus = make_modulus(n)
    if n == 1:
        raise ValueError("D(1) has no divisors other than 1")
    tuples = candidate_tuples(modulus, config.max_len)
    if len(tuples) > config.max_tuples:
        raise ValueError(f"{len(tuples)} candidate tuples exceed max_tuples={config.max_tuples}")
    margins = _sector_margins(modulus, tuples)
    n_sec = len(modulus.divisor_list)
    # smallest position index in each sector: n/d, except 0 for the sector of 1
    reps = [0] + [n // d for d in modulus.divisor_list[1:]]

    best_margin = np.full(len(tuples), -np.inf)
    best_key: list = [None] * len(tuples)
    if config.explicit_grid:
        for secs, weights in _grid_points(n_sec, config.grid, config.grid_support):
            vals = margins[:, list(secs)] @ np.array(weights)
            key = (0, len(secs), tuple(reps[s] for s in secs), weights)
            better = vals > best_margin + 1e-12
            for i in np.flatnonzero(better):
                best_margin[i] = vals[i]
                best_key[i] = key
    else:
        for i in range(len(tuples)):
            row = margins[i]
            top = row.max()
            cands = [reps[j] for j in np.flatnonzero(row == top)]
            best_margin[i] = top
            best_key[i] = (0, 1, (min(cands),), (1.0,))

    if config.samples:
        sec = _sector_index(modulus)
        sums = np.zeros((config.samples, n_sec))
        for k in range(config.samples):
            sums[k] = np.bincount(sec, weights=_random_diagonals(n, config.seed, k), minlength=n_sec)
        for start in range(0, len(tuples), 2048):
            block = margins[start : start + 2048] @ sums.T
            kbest = block.argmax(axis=1)
            vals = block[np.arange(block.shape[0]), kbest]
            for off, (v, k) in enumerate(zip(vals, kbest)):
                i = start + off
                if v > best_margin[i] + 1e-12:
                    best_margin[i] = v
                    best_key[i] = (1, int(k))

    def label(key) -> str:
        if key[0] == 0:
            return "grid:" + ",".join(f"{idx}={w!r}" for idx, w in zip(key[2], key[3]))
        return f"ginibre:seed={config.seed}:sample={key[1]}"

    order = sorted(range(len(tuples)), key=lambda i: (-round(best_margin[i], 12), tuples[i], best_key[i]))
    win = order[0]
    key = best_key[win]
    if key[0] == 0:
        diag = np.zeros(n)
        for idx, w in zip(key[2], key[3]):
            diag[idx] += w
    else:
        diag = _random_diagonals(n, config.seed, key[1])
    report = bell_check(tuples[win], DensityMatrix(n, diag), rho_label=label(key))
    rows = tuple((tuples[i], float(best_margin[i]), label(best_key[i])) for i in range(len(tuples)))
    return SearchResult(report, rows)


def search_violation(n: int, config: SearchConfig = SearchConfig()) -> BellReport:
    return search(n, config).best
