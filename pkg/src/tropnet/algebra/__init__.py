"""Exact arithmetic: rationals, polynomials, 3x3 polynomial matrices, ideals."""

from .groebner import (
    DEFAULT_STEP_BUDGET,
    BudgetExceeded,
    Completion,
    Derivation,
    IdealBasis,
    IdealResult,
    Step,
    ideal_contains_one,
    minimal_polynomial,
    multipoly_reduce,
    solve_linear,
)
from .mat3 import Mat3, degeneration_32, degeneration_T, mat3_adjugate, mat3_cofactor, mat3_det
from .multipoly import MultiPoly, grlex_key
from .rational import Fraction, format_rational, parse_rational
from .serialize import (
    mat3_from_json,
    mat3_to_json,
    multipoly_from_json,
    multipoly_to_json,
    unipoly_from_json,
    unipoly_to_json,
)
from .unipoly import NEG_INF, UniPoly, ZeroDegreeError, unipoly_arith

__all__ = [
    "DEFAULT_STEP_BUDGET", "BudgetExceeded", "Completion", "Derivation", "IdealBasis",
    "IdealResult", "Step", "ideal_contains_one", "minimal_polynomial", "multipoly_reduce",
    "solve_linear", "Mat3", "degeneration_32", "degeneration_T", "mat3_adjugate",
    "mat3_cofactor", "mat3_det", "MultiPoly", "grlex_key", "Fraction", "format_rational",
    "parse_rational", "NEG_INF", "UniPoly", "ZeroDegreeError", "unipoly_arith",
    "mat3_from_json", "mat3_to_json", "multipoly_from_json", "multipoly_to_json",
    "unipoly_from_json", "unipoly_to_json",
]
