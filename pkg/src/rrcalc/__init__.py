"""Exact invariants of m-primary ideals in low-dimensional local rings.

Hilbert-Samuel functions and coefficients, postulation numbers,
Ratliff-Rush closures and their stability/surjectivity indices, reduction
numbers, plus an executable harness that checks the governing theorems over
seeded random corpora.  All arithmetic is exact over Q.
"""

from .errors import (
    AnchorNotFoundError,
    BudgetExceededError,
    CrossCheckMismatchError,
    NoSuperficialFoundError,
    NotAReductionError,
    NotMonomialError,
    NotMPrimaryError,
    ParseError,
    RingMismatchError,
    RRCalcError,
    SamplingExhaustedError,
    StabilizationBudgetExceededError,
)
from .ring import EQ, GT, LT, DEGREVLEX, LEX, RingCtx, TermOrder, cmp_monomials
from .poly import Polynomial, format_polynomial, parse_polynomial
from .groebner import GBLimits, GroebnerBasis, buchberger, normal_form
from .ideals import Ideal, StaircaseDiagram

__all__ = [
    "AnchorNotFoundError",
    "BudgetExceededError",
    "CrossCheckMismatchError",
    "NoSuperficialFoundError",
    "NotAReductionError",
    "NotMonomialError",
    "NotMPrimaryError",
    "ParseError",
    "RingMismatchError",
    "RRCalcError",
    "SamplingExhaustedError",
    "StabilizationBudgetExceededError",
    "EQ",
    "GT",
    "LT",
    "DEGREVLEX",
    "LEX",
    "RingCtx",
    "TermOrder",
    "cmp_monomials",
    "Polynomial",
    "format_polynomial",
    "parse_polynomial",
    "GBLimits",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "Ideal",
    "StaircaseDiagram",
]
