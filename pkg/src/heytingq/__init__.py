"""Heyting algebras of supernatural numbers and divisor lattices, finite quantum
subsystems indexed by divisors, and logical Bell inequalities with Heyting factors."""

from .contextuality import (
    BellReport,
    Context,
    SearchConfig,
    bell_check,
    example_density,
    heyting_factor,
    pseudo_distance,
    search,
    search_violation,
)
from .divisors import (
    DivisorElement,
    Modulus,
    d_equiv,
    d_implies,
    d_join,
    d_meet,
    d_neg,
    hall_divisors,
    make_modulus,
    to_dot,
)
from .expr import evaluate, parse, render
from .quantum import (
    DensityMatrix,
    InvalidState,
    ProjectorKind,
    StateVector,
    embed_density,
    embed_state,
    fourier,
    projector,
    sigma,
    tau,
    tau_tilde,
)
from .supernatural import (
    OMEGA,
    ONE,
    PrimeSet,
    SupernaturalNumber,
    omega,
    parse_supernatural,
    render_group,
    sn_equiv,
    sn_from_natural,
    sn_implies,
    sn_join,
    sn_meet,
    sn_neg,
)

__version__ = "0.1.0"

__all__ = [
    "bell_check",
    "BellReport",
    "Context",
    "d_equiv",
    "d_implies",
    "d_join",
    "d_meet",
    "d_neg",
    "DensityMatrix",
    "DivisorElement",
    "embed_density",
    "embed_state",
    "evaluate",
    "example_density",
    "fourier",
    "hall_divisors",
    "heyting_factor",
    "InvalidState",
    "make_modulus",
    "Modulus",
    "omega",
    "OMEGA",
    "ONE",
    "parse",
    "parse_supernatural",
    "PrimeSet",
    "projector",
    "ProjectorKind",
    "pseudo_distance",
    "render",
    "render_group",
    "search",
    "search_violation",
    "SearchConfig",
    "sigma",
    "sn_equiv",
    "sn_from_natural",
    "sn_implies",
    "sn_join",
    "sn_meet",
    "sn_neg",
    "StateVector",
    "SupernaturalNumber",
    "tau",
    "tau_tilde",
    "to_dot",
]
