"""Typed exceptions shared by all rrcalc modules."""

from __future__ import annotations


class RRCalcError(Exception):
    """Base class for all rrcalc errors."""


class RingMismatchError(RRCalcError):
    """Operands live in different rings or use different term orders."""


class NotMPrimaryError(RRCalcError):
    """An operation that is only sound for m-primary ideals got something else."""


class NotMonomialError(RRCalcError):
    """A monomial-ideal-only operation received a non-monomial ideal."""


class BudgetExceededError(RRCalcError):
    """A Groebner computation exceeded its pair or degree budget.

    Signals an instance beyond desk scale; rerun with larger budgets.
    """

    def __init__(self, message: str, *, pairs: int | None = None, degree: int | None = None):
        super().__init__(message)
        self.pairs = pairs
        self.degree = degree


class StabilizationBudgetExceededError(RRCalcError):
    """An ascending chain did not show a trailing window of equality in budget."""


class CrossCheckMismatchError(RRCalcError):
    """Two independent computations of the same invariant disagree.

    Usually a stabilization-window failure; rerun with a larger n_max.
    """


class NoSuperficialFoundError(RRCalcError):
    """No candidate passed the superficial-element checks within the trial budget."""

    def __init__(self, message: str, best_candidate=None, failing_check: str | None = None):
        super().__init__(message)
        self.best_candidate = best_candidate
        self.failing_check = failing_check


class SamplingExhaustedError(RRCalcError):
    """Reduction sampling discarded too many draws to reach the requested count."""


class NotAReductionError(RRCalcError):
    """J.I^n never reached I^(n+1) within the scan budget."""

    def __init__(self, message: str, n_max: int):
        super().__init__(message)
        self.n_max = n_max


class AnchorNotFoundError(RRCalcError):
    """No anchor with a stable polynomial fit was found below the scan budget."""


class ParseError(RRCalcError):
    """Positioned syntax error for the input grammar."""

    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        where = f"line {line}, col {col}"
        msg = f"{where}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)
