"""Finite quantum systems on Z(n): embeddings, sector spaces, projectors, probabilities.

Positions index the basis ``|X_n; r>`` for ``r = 0..n-1``. Every projector
used here is diagonal in that basis, so it is stored as a boolean mask and
all traces against a density matrix are masked diagonal sums.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from os import PathLike
from typing import Any, Mapping

import numpy as np

from .arith import lcm, totient, units
from .divisors import DEFAULT_CAP

DENSE_CAP = 4096
EPS_NORM = 1e-10
EPS_HERM = 1e-10
EPS_TRACE = 1e-10
EPS_PSD = 1e-8


class InvalidState(ValueError):
    """A state or density matrix failed a validity check.

    ``invariant`` names the check: ``shape``, ``norm``, ``hermitian``,
    ``trace``, ``psd``, ``nonnegative`` or ``format``.
    """

    def __init__(self, invariant: str, detail: str):
        super().__init__(f"{invariant}: {detail}")
        self.invariant = invariant


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _require_divides(m: int, n: int, what: str = "m") -> None:
    if m < 1 or n % m:
        raise ValueError(f"{what}={m} does not divide n={n}")


# -- Fourier ------------------------------------------------------------------


def fourier(n: int) -> np.ndarray:
    """``F[r, s] = n**-0.5 * exp(2 pi i r s / n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    r = np.arange(n)
    phase = np.outer(r, r) % n  # reduce before scaling to keep the angle exact
    return np.exp(2j * np.pi * phase / n) / math.sqrt(n)


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if a.size == 0:
            raise InvalidState("shape", "empty state vector")
        norm = np.linalg.norm(a)
        if abs(norm - 1.0) > EPS_NORM:
            raise InvalidState("norm", f"|psi| = {norm!r}, expected 1")
        object.__setattr__(self, "amplitudes", _readonly(a))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def basis(cls, n: int, r: int) -> StateVector:
        a = np.zeros(n, dtype=complex)
        a[r % n] = 1.0
        return cls(a)


def apply_fourier(state: StateVector) -> StateVector:
    return StateVector(fourier(state.dim) @ state.amplitudes)


def momentum_amplitudes(state: StateVector) -> np.ndarray:
    """Coefficients ``b_r`` of ``state`` in the momentum basis ``F|X; r>``."""
    return fourier(state.dim).conj().T @ state.amplitudes


# -- density matrices -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A density matrix on H(n), held either dense or as its diagonal.

    The diagonal form covers states that are mixtures of position states and
    is not subject to :data:`DENSE_CAP`.
    """

    dim: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        n = int(self.dim)
        e = np.asarray(self.entries)
        if e.ndim == 1:
            if e.shape != (n,):
                raise InvalidState("shape", f"diagonal of length {e.shape[0]} for n={n}")
            if np.iscomplexobj(e):
                if np.max(np.abs(e.imag), initial=0.0) > EPS_HERM:
                    raise InvalidState("hermitian", "diagonal entries must be real")
                e = e.real
            e = np.array(e, dtype=float)
            if n > DEFAULT_CAP:
                raise InvalidState("shape", f"n={n} exceeds the cap {DEFAULT_CAP}")
            if e.min() < -EPS_PSD:
                raise InvalidState("psd", f"negative diagonal entry {e.min()!r}")
        elif e.ndim == 2:
            if e.shape != (n, n):
                raise InvalidState("shape", f"matrix shape {e.shape} for n={n}")
            if n > DENSE_CAP:
                raise InvalidState("shape", f"dense n={n} exceeds the cap {DENSE_CAP}")
            e = np.array(e, dtype=complex)
            herr = np.max(np.abs(e - e.conj().T), initial=0.0)
            if herr > EPS_HERM:
                raise InvalidState("hermitian", f"max |rho - rho^dagger| = {herr!r}")
            lo = np.linalg.eigvalsh(e).min()
            if lo < -EPS_PSD:
                raise InvalidState("psd", f"smallest eigenvalue {lo!r}")
        else:
            raise InvalidState("shape", f"entries must be 1- or 2-dimensional, got ndim={e.ndim}")
        tr = complex(np.trace(e) if e.ndim == 2 else e.sum())
        if abs(tr - 1.0) > EPS_TRACE:
            raise InvalidState("trace", f"trace {tr!r}, expected 1")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "entries", _readonly(e))

    @property
    def is_diagonal(self) -> bool:
        return self.entries.ndim == 1

    def diagonal(self) -> np.ndarray:
        if self.is_diagonal:
            return self.entries
        return self.entries.diagonal().real

    def to_dense(self) -> np.ndarray:
        if self.is_diagonal:
            if self.dim > DENSE_CAP:
                raise ValueError(f"n={self.dim} too large for a dense matrix")
            return np.diag(self.entries).astype(complex)
        return np.array(self.entries)

    @classmethod
    def from_diagonal(cls, probs) -> DensityMatrix:
        probs = np.asarray(probs, dtype=float)
        return cls(probs.size, probs)

    @classmethod
    def from_matrix(cls, matrix) -> DensityMatrix:
        matrix = np.asarray(matrix)
        return cls(matrix.shape[0], matrix)

    @classmethod
    def pure(cls, state: StateVector) -> DensityMatrix:
        a = state.amplitudes
        return cls(a.size, np.outer(a, a.conj()))

    @classmethod
    def basis(cls, n: int, r: int) -> DensityMatrix:
        d = np.zeros(n)
        d[r % n] = 1.0
        return cls(n, d)


def ginibre_density(n: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Random density matrix ``G G^dagger / Tr`` with complex Gaussian ``G`` of shape (n, rank)."""
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(n, rho / np.trace(rho).real)


# -- embeddings ---------------------------------------------------------------


def embed_state(psi: StateVector, k: int) -> StateVector:
    """The map A_{mk}: amplitude at position ``r`` moves to ``(k/m) r``."""
    m = psi.dim
    _require_divides(m, k, "dim")
    out = np.zeros(k, dtype=complex)
    out[:: k // m] = psi.amplitudes
    return StateVector(out)


def embed_density(rho: DensityMatrix, k: int) -> DensityMatrix:
    """The induced map A'_{mk} on density matrices: entry (r, s) moves to (dr, ds)."""
    m = rho.dim
    _require_divides(m, k, "dim")
    d = k // m
    if rho.is_diagonal:
        out = np.zeros(k)
        out[::d] = rho.entries
        return DensityMatrix(k, out)
    if k > DENSE_CAP:
        raise ValueError(f"dense embedding into n={k} exceeds the cap {DENSE_CAP}")
    out = np.zeros((k, k), dtype=complex)
    out[::d, ::d] = rho.entries
    return DensityMatrix(k, out)


# -- projectors ---------------------------------------------------------------


class ProjectorKind(Enum):
    P = "P"
    P_TILDE = "P_TILDE"
    SECTOR = "SECTOR"
    T = "T"
    S = "S"


@dataclass(frozen=True)
class ProjectorSpec:
    dim: int
    kind: ProjectorKind
    params: tuple[int, ...]
    mask: np.ndarray = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.mask))

    def indices(self) -> list[int]:
        return np.flatnonzero(self.mask).tolist()

    def matrix(self) -> np.ndarray:
        return np.diag(self.mask.astype(float))


def _p_mask(m: int, n: int) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[:: n // m] = True
    return mask


def _sector_mask(m: int, n: int) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    d = n // m
    mask[[s * d for s in units(m)]] = True
    return mask


def projector(kind: ProjectorKind | str, params, n: int) -> ProjectorSpec:
    """Build one of the position-diagonal projectors on H(n).

    ``P(m)`` projects onto H(m), ``P_TILDE(m)`` removes the lowest state,
    ``SECTOR(m)`` onto the embedded h(m), ``T(m1, m2)`` onto span of
    H(m1) and H(m2), and ``S(m1, m2)`` onto the rest of H(m1 v m2).
    """
    kind = ProjectorKind(kind) if isinstance(kind, str) else kind
    params = (params,) if isinstance(params, int) else tuple(int(p) for p in params)
    expected = 2 if kind in (ProjectorKind.T, ProjectorKind.S) else 1
    if len(params) != expected:
        raise ValueError(f"{kind.value} takes {expected} parameter(s), got {params}")
    for p in params:
        _require_divides(p, n)
    if kind is ProjectorKind.P:
        mask = _p_mask(params[0], n)
    elif kind is ProjectorKind.P_TILDE:
        mask = _p_mask(params[0], n)
        mask[0] = False
    elif kind is ProjectorKind.SECTOR:
        mask = _sector_mask(params[0], n)
    else:
        m1, m2 = params
        t = _p_mask(m1, n) | _p_mask(m2, n)
        mask = t if kind is ProjectorKind.T else _p_mask(lcm(m1, m2), n) & ~t
    return ProjectorSpec(n, kind, params, _readonly(mask))


def expected_rank(kind: ProjectorKind, params: tuple[int, ...]) -> int:
    """Dimension of the projector's range from its closed form."""
    if kind is ProjectorKind.P:
        return params[0]
    if kind is ProjectorKind.P_TILDE:
        return params[0] - 1
    if kind is ProjectorKind.SECTOR:
        return totient(params[0])
    m1, m2 = params
    g = math.gcd(m1, m2)
    if kind is ProjectorKind.T:
        return m1 + m2 - g
    return lcm(m1, m2) + g - m1 - m2


@dataclass(frozen=True)
class MeasurementOperator:
    """Two-outcome von Neumann measurement ``eigen_true * P + eigen_false * (1 - P)``.

    The eigenvalues are labels; probabilities come from the projector alone.
    """

    projector: ProjectorSpec
    eigen_true: float = 1.0
    eigen_false: float = 0.0

    def matrix(self) -> np.ndarray:
        return np.diag(np.where(self.projector.mask, self.eigen_true, self.eigen_false).astype(float))

    def spectrum(self) -> set[float]:
        vals = set()
        if self.projector.mask.any():
            vals.add(self.eigen_true)
        if not self.projector.mask.all():
            vals.add(self.eigen_false)
        return vals

    def probability(self, rho: DensityMatrix) -> float:
        """Probability of the ``eigen_true`` outcome."""
        return trace_with(rho, self.projector)


def trace_with(rho: DensityMatrix, proj: ProjectorSpec) -> float:
    if proj.dim != rho.dim:
        raise ValueError(f"projector on H({proj.dim}) applied to a state on H({rho.dim})")
    return float(rho.diagonal()[proj.mask].sum())


# -- probabilities ------------------------------------------------------------


def tau(m: int, rho: DensityMatrix) -> float:
    """Probability that the system collapses into the subsystem on Z(m)."""
    n = rho.dim
    _require_divides(m, n)
    return float(rho.diagonal()[:: n // m].sum())


def tau_tilde(m: int, rho: DensityMatrix) -> float:
    """``tau(m) - tau(1)``: collapse into H(m) with the lowest state excluded."""
    return tau(m, rho) - tau(1, rho)


def sigma(m1: int, m2: int, rho: DensityMatrix) -> float:
    """Weight of disjunctions of H(m1), H(m2) that are not superpositions of them."""
    g = math.gcd(m1, m2)
    return tau(lcm(m1, m2), rho) - tau(m1, rho) - tau(m2, rho) + tau(g, rho)


def sigma_projector(m1: int, m2: int, rho: DensityMatrix) -> float:
    """Same quantity as :func:`sigma`, computed as ``Tr[rho S(m1, m2)]``."""
    return trace_with(rho, projector(ProjectorKind.S, (m1, m2), rho.dim))


def sector_decomposition(n: int) -> list[tuple[int, tuple[int, ...]]]:
    """For each ``m | n`` the indices ``s * (n/m)`` with ``s`` a unit mod ``m``.

    The index sets partition ``range(n)``; index ``r`` lands in sector
    ``n / gcd(r, n)``.
    """
    from .arith import divisors

    return [(m, tuple(s * (n // m) for s in units(m))) for m in divisors(n)]


def sector_of(r: int, n: int) -> int:
    return n // math.gcd(r, n)


# -- file formats -------------------------------------------------------------


def density_from_json(obj: Mapping[str, Any]) -> DensityMatrix:
    """Build a density matrix from ``{"n", "diag"}`` or ``{"n", "re", "im"}``.

    ``diag`` may be a full list or a sparse ``{"index": prob}`` mapping.
    """
    if not isinstance(obj, Mapping) or "n" not in obj:
        raise InvalidState("format", "expected an object with key 'n'")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise InvalidState("format", f"'n' must be a positive integer, got {n!r}")
    if "diag" in obj:
        diag = obj["diag"]
        if isinstance(diag, Mapping):
            if n > DEFAULT_CAP:
                raise InvalidState("shape", f"n={n} exceeds the cap {DEFAULT_CAP}")
            full = np.zeros(n)
            for k, v in diag.items():
                idx = int(k)
                if not 0 <= idx < n:
                    raise InvalidState("shape", f"index {idx} outside 0..{n - 1}")
                full[idx] = float(v)
            return DensityMatrix(n, full)
        return DensityMatrix(n, np.asarray(diag, dtype=float))
    if "re" in obj:
        re_ = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re_)), dtype=float)
        if re_.shape != im.shape:
            raise InvalidState("shape", f"'re' shape {re_.shape} differs from 'im' shape {im.shape}")
        return DensityMatrix(n, re_ + 1j * im)
    raise InvalidState("format", "expected 'diag' or 're'/'im'")


def density_to_json(rho: DensityMatrix) -> dict[str, Any]:
    if rho.is_diagonal:
        return {"n": rho.dim, "diag": rho.entries.tolist()}
    return {"n": rho.dim, "re": rho.entries.real.tolist(), "im": rho.entries.imag.tolist()}


def state_from_json(obj: Mapping[str, Any]) -> StateVector:
    if not isinstance(obj, Mapping) or "re" not in obj:
        raise InvalidState("format", "expected an object with key 're'")
    re_ = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj.get("im", np.zeros_like(re_)), dtype=float)
    if "n" in obj and obj["n"] != re_.size:
        raise InvalidState("shape", f"'n'={obj['n']} but {re_.size} amplitudes")
    return StateVector(re_ + 1j * im)


def load_density(path: str | PathLike) -> DensityMatrix:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidState("format", f"{path}: {exc}") from exc
    return density_from_json(obj)


def load_state(path: str | PathLike) -> StateVector:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidState("format", f"{path}: {exc}") from exc
    return state_from_json(obj)
