"""Verification lab for successive Taylor-coefficient bounds.

Builds members of the spirallike, starlike, convex and close-to-convex
families over truncated power series, certifies their class membership
on grids, evaluates every successive-coefficient bound, replays the
derivation chain behind the spiral bound, and searches atomic-measure
space for extremal functions to corroborate sharpness.
"""

from .classes import (
    AtomicMeasure,
    ClassSpec,
    InvalidParams,
    UnknownName,
    alexander_forward,
    alexander_inverse,
    decode_measure_spec,
    encode_measure_spec,
    herglotz,
    member_from_measure,
    named,
    sample_measure,
    spirallike_from_measure,
)
from .extremal import SearchProblem, SearchResult, certify_never_exceeds, search
from .inequalities import (
    TOL_INEQ,
    BoundReport,
    ChainInequalityViolation,
    DegenerateCosGamma,
    InvalidIndices,
    OrderTooLow,
    ProofTrace,
    bound_rhs,
    gamma_ratio,
    lemma31_check,
    milin_third,
    one_sided_diff,
    proof_trace,
    psi_max,
    recover_c,
    robertson_gap,
    successive_diff,
)
from .membership import (
    TOL_MEMBER,
    CriticalPointOnGrid,
    Grid,
    MembershipReport,
    ZeroOnGrid,
    check_convex,
    check_kaplan,
    check_spirallike,
)
from .series import (
    DIV_FLOOR,
    ORDER_DEFAULT,
    TOL_EXACT,
    DivisionByNearZeroConstant,
    FunctionSeries,
    NonzeroConstantTerm,
    NotUnitConstantTerm,
    Series,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "BoundReport",
    "ChainInequalityViolation",
    "ClassSpec",
    "CriticalPointOnGrid",
    "DIV_FLOOR",
    "DegenerateCosGamma",
    "DivisionByNearZeroConstant",
    "FunctionSeries",
    "Grid",
    "InvalidIndices",
    "InvalidParams",
    "MembershipReport",
    "NonzeroConstantTerm",
    "NotUnitConstantTerm",
    "ORDER_DEFAULT",
    "OrderTooLow",
    "ProofTrace",
    "SearchProblem",
    "SearchResult",
    "Series",
    "TOL_EXACT",
    "TOL_INEQ",
    "TOL_MEMBER",
    "UnknownName",
    "ZeroOnGrid",
    "alexander_forward",
    "alexander_inverse",
    "bound_rhs",
    "certify_never_exceeds",
    "check_convex",
    "check_kaplan",
    "check_spirallike",
    "decode_measure_spec",
    "encode_measure_spec",
    "gamma_ratio",
    "herglotz",
    "lemma31_check",
    "member_from_measure",
    "milin_third",
    "named",
    "one_sided_diff",
    "proof_trace",
    "psi_max",
    "recover_c",
    "robertson_gap",
    "sample_measure",
    "search",
    "spirallike_from_measure",
    "successive_diff",
]
