"""Ratliff-Rush closures, stability/surjectivity indices, superficial elements.

Everything mod (x) is computed on lifted ideals of R containing (x): the
quotient power filtration {I^n + (x)}, its closure lifts T_n, and the colon
tests (I^{n+1} : x) = I^n.  Chains stabilize heuristically: a trailing
window of equal values below n_max settles a chain, and the two independent
routes to rho are cross-checked to catch premature windows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CrossCheckMismatchError,
    NoSuperficialFoundError,
    StabilizationBudgetExceededError,
)
from .hilbert import (
    HilbertReport,
    HilbertSeq,
    fit_hilbert_polynomial,
    hilbert_report,
    ideal_hilbert_seq,
)
from .ideals import (
    Ideal,
    colon,
    ideal_contains_ideal,
    ideal_equal,
    ideal_power,
    ideal_sum,
    length_quotient,
)
from .limits import DEFAULT_LIMITS, Limits
from .poly import Polynomial


def _trailing_start(flags: dict, n_max: int, window: int, what: str) -> int:
    """Smallest k with flags true on [k, n_max]; the run must cover `window`."""
    if not flags.get(n_max, False):
        raise StabilizationBudgetExceededError(
            f"{what}: no equality at n_max={n_max}; raise n_max"
        )
    k = n_max
    while k > 1 and flags.get(k - 1, False):
        k -= 1
    if n_max - k + 1 < window:
        raise StabilizationBudgetExceededError(
            f"{what}: trailing run [{k}, {n_max}] shorter than window {window}"
        )
    return k


@dataclass
class ChainValue:
    """A stabilized ascending chain: its value and where it settled."""

    ideal: Ideal
    settled_at: int
    checked_to: int


def rr_closure_chain(I: Ideal, m: int, limits: Limits = DEFAULT_LIMITS) -> ChainValue:
    """tilde(I^m) as the settled value of A_k = (I^{m+k} : I^k).

    The chain is verified ascending; it settles at the first k where
    `window` consecutive values agree.
    """
    if m < 1:
        raise ValueError("Ratliff-Rush closure needs m >= 1")
    prev = None
    run_start = None
    run_length = 0
    for k in range(1, limits.n_max + 1):
        high = ideal_power(I, m + k)
        deg = max((g.total_degree() for g in high.gens), default=0)
        a_k = colon(high, ideal_power(I, k), limits.gb(deg))
        if prev is not None and not ideal_contains_ideal(a_k, prev.ideal):
            raise CrossCheckMismatchError(
                f"Ratliff-Rush chain for {I!r}^{m} is not ascending at k={k}"
            )
        if prev is not None and ideal_equal(a_k, prev.ideal):
            run_length += 1
            if run_length >= limits.window:
                return ChainValue(prev.ideal, run_start, k)
        else:
            prev = ChainValue(a_k, k, k)
            run_start = k
            run_length = 1
            if limits.window <= 1:
                return ChainValue(a_k, k, k)
    raise StabilizationBudgetExceededError(
        f"Ratliff-Rush chain for {I!r}^{m} has no window of {limits.window} "
        f"equal values by k={limits.n_max}"
    )


def rr_closure(I: Ideal, m: int, limits: Limits = DEFAULT_LIMITS) -> Ideal:
    return rr_closure_chain(I, m, limits).ideal


class QuotientFiltration:
    """The filtration {I^n + (x)} of R/(x), held as lifted ideals of R."""

    def __init__(self, I: Ideal, x: Polynomial, limits: Limits = DEFAULT_LIMITS):
        I.ring.check_same(x.ring)
        if x.is_zero():
            raise ValueError("quotient by the zero element")
        self.I = I
        self.x = x
        self.limits = limits
        self._lifted: dict = {}
        self._report: HilbertReport | None = None

    def lifted(self, n: int) -> Ideal:
        """I^n + (x), the lift of (I')^n."""
        if n not in self._lifted:
            self._lifted[n] = ideal_sum(ideal_power(self.I, n), Ideal(self.I.ring, [self.x]))
        return self._lifted[n]

    def h(self, n: int) -> int:
        if n <= 0:
            return 0
        lifted = self.lifted(n)
        deg = max(g.total_degree() for g in lifted.gens)
        return length_quotient(lifted, self.limits.gb(deg))

    def seq(self) -> HilbertSeq:
        return HilbertSeq(self.h, self.I.ring.dimension - 1, label="H_quotient")

    def report(self, delta_from: int = 0) -> HilbertReport:
        if self._report is None:
            self._report = hilbert_report(self.seq(), self.limits, delta_from=delta_from)
        return self._report


@dataclass
class SuperficialCertificate:
    """Why an element was accepted as superficial for I."""

    element: Polynomial
    coefficients: tuple | None
    e_pairs: tuple  # ((e_i(I), e_i(I/(x))) for i < d)
    e_checked: int  # invariance enforced for 0 <= i <= e_checked
    colon_window: tuple  # (first k, n_max) with (I^{n+1}:x) = I^n on [k, n_max]
    in_I_not_I2: bool

    def to_dict(self) -> dict:
        return {
            "element": str(self.element),
            "coefficients": list(self.coefficients) if self.coefficients else None,
            "e_pairs": [list(p) for p in self.e_pairs],
            "e_checked_up_to": self.e_checked,
            "colon_window": list(self.colon_window),
            "in_I_not_I2": self.in_I_not_I2,
        }


class ReesAnalysis:
    """All (I, x)-coupled Ratliff-Rush data with shared caches."""

    def __init__(self, I: Ideal, x: Polynomial, limits: Limits = DEFAULT_LIMITS):
        self.I = I
        self.x = x
        self.limits = limits
        self.filtration = QuotientFiltration(I, x, limits)
        self._tilde: dict = {}
        self._T: dict = {}
        self._colon_eq: dict = {}
        self._tilde_plus_x: dict = {}

    # -- plain Ratliff-Rush chain ------------------------------------

    def tilde(self, m: int) -> ChainValue:
        if m not in self._tilde:
            self._tilde[m] = rr_closure_chain(self.I, m, self.limits)
        return self._tilde[m]

    def tilde_equals_power(self, n: int) -> bool:
        return ideal_equal(self.tilde(n).ideal, ideal_power(self.I, n))

    def rho_definition(self) -> int:
        flags = {n: self.tilde_equals_power(n) for n in range(1, self.limits.n_max + 1)}
        return _trailing_start(flags, self.limits.n_max, self.limits.window, "rho(tilde)")

    # -- colon-by-x route ---------------------------------------------

    def colon_eq(self, n: int) -> bool:
        """Whether (I^{n+1} : x) = I^n."""
        if n not in self._colon_eq:
            high = ideal_power(self.I, n + 1)
            deg = max(
                max((g.total_degree() for g in high.gens), default=0),
                self.x.total_degree(),
            )
            c = colon(high, Ideal(self.I.ring, [self.x]), self.limits.gb(deg))
            self._colon_eq[n] = ideal_equal(c, ideal_power(self.I, n), self.limits.gb(deg))
        return self._colon_eq[n]

    def rho_colon(self) -> int:
        flags = {n: self.colon_eq(n) for n in range(1, self.limits.n_max + 1)}
        return _trailing_start(flags, self.limits.n_max, self.limits.window, "rho(colon)")

    def rho(self) -> tuple:
        """(rho, diagnostics); the two routes must agree."""
        rho_def = self.rho_definition()
        rho_col = self.rho_colon()
        if rho_def != rho_col:
            raise CrossCheckMismatchError(
                f"stability index mismatch: tilde-route {rho_def} vs colon-route "
                f"{rho_col} for {self.I!r}; rerun with larger n_max"
            )
        return rho_def, {
            "rho_definition": rho_def,
            "rho_colon": rho_col,
            "n_max": self.limits.n_max,
            "window": self.limits.window,
            "cross_check": "ok",
        }

    # -- quotient closure lifts ----------------------------------------

    def quotient_closure(self, m: int) -> ChainValue:
        """Lift T_m of tilde((I')^m): settled B_k = ((I^{m+k}+(x)) : I^k)."""
        if m in self._T:
            return self._T[m]
        limits = self.limits
        prev = None
        run_start = None
        run_length = 0
        for k in range(1, limits.n_max + 1):
            b_k = self.filtration.lifted(m + k)
            deg = max(g.total_degree() for g in b_k.gens)
            gb_limits = limits.gb(deg)
            for _ in range(k):  # (J : I^k) as k successive (. : I)
                b_k = colon(b_k, self.I, gb_limits)
            if prev is not None and not ideal_contains_ideal(b_k, prev.ideal):
                raise CrossCheckMismatchError(
                    f"quotient closure chain not ascending at m={m}, k={k}"
                )
            if prev is not None and ideal_equal(b_k, prev.ideal):
                run_length += 1
                if run_length >= limits.window:
                    value = ChainValue(prev.ideal, run_start, k)
                    self._T[m] = value
                    return value
            else:
                prev = ChainValue(b_k, k, k)
                run_start = k
                run_length = 1
                if limits.window <= 1:
                    self._T[m] = prev
                    return prev
        raise StabilizationBudgetExceededError(
            f"quotient closure chain for power {m} has no window of "
            f"{limits.window} equal values by k={limits.n_max}"
        )

    def tilde_plus_x(self, n: int) -> Ideal:
        if n not in self._tilde_plus_x:
            self._tilde_plus_x[n] = ideal_sum(
                self.tilde(n).ideal, Ideal(self.I.ring, [self.x])
            )
        return self._tilde_plus_x[n]

    def pi_surjective(self, n: int) -> bool:
        """pi_n onto <=> tilde(I^n) + (x) = T_n (the inclusion <= always holds)."""
        return ideal_equal(self.tilde_plus_x(n), self.quotient_closure(n).ideal)

    def omega(self) -> int:
        flags = {n: self.pi_surjective(n) for n in range(1, self.limits.n_max + 1)}
        return _trailing_start(flags, self.limits.n_max, self.limits.window, "omega")

    def rho_quotient(self) -> int:
        """rho(I/(x)): first k with I^n + (x) = T_n for all k <= n <= n_max."""
        flags = {
            n: ideal_equal(self.filtration.lifted(n), self.quotient_closure(n).ideal)
            for n in range(1, self.limits.n_max + 1)
        }
        return _trailing_start(
            flags, self.limits.n_max, self.limits.window, "rho(quotient)"
        )


# -- spec-level operation wrappers ----------------------------------------


def stability_index(I: Ideal, x: Polynomial, limits: Limits = DEFAULT_LIMITS) -> int:
    """rho(I), computed by definition and by colon-by-x, cross-checked."""
    rho, _ = ReesAnalysis(I, x, limits).rho()
    return rho


def quotient_rr_closure(
    I: Ideal, x: Polynomial, m: int, limits: Limits = DEFAULT_LIMITS
) -> Ideal:
    return ReesAnalysis(I, x, limits).quotient_closure(m).ideal


def surjectivity_index(I: Ideal, x: Polynomial, limits: Limits = DEFAULT_LIMITS) -> int:
    return ReesAnalysis(I, x, limits).omega()


def _nonzero_coeffs(rng: random.Random, count: int) -> tuple:
    pool = [c for c in range(-9, 10) if c]
    return tuple(rng.choice(pool) for _ in range(count))


def _combo(I: Ideal, coeffs) -> Polynomial:
    out = Polynomial.zero(I.ring)
    for c, g in zip(coeffs, I.gens):
        out = out + g.scale(c)
    return out


def find_superficial(
    I: Ideal,
    trials: int | None = None,
    seed: int = 0,
    limits: Limits = DEFAULT_LIMITS,
    supplied: Polynomial | None = None,
    ideal_e: tuple | None = None,
) -> tuple:
    """Certify a superficial element; returns (certificate, ReesAnalysis).

    Candidates are x = sum(c_i g_i) with nonzero c_i in [-9, 9] (or the
    supplied element, tried first).  Acceptance needs x in I \\ I^2, the
    colon window (I^{n+1}:x) = I^n on a trailing range, and e_i(I) =
    e_i(I/(x)) for 0 <= i <= d-2.
    """
    d = I.ring.dimension
    trials = limits.trials if trials is None else trials
    if ideal_e is None:
        ideal_e = fit_hilbert_polynomial(ideal_hilbert_seq(I, limits), limits).e
    rng = random.Random(f"superficial:{seed}")
    I2 = ideal_power(I, 2)

    best = None
    best_failure = "no candidates tried"
    candidates = []
    if supplied is not None:
        candidates.append((supplied, None))
    for _ in range(trials):
        coeffs = _nonzero_coeffs(rng, len(I.gens))
        candidates.append((_combo(I, coeffs), coeffs))

    for x, coeffs in candidates:
        if x.is_zero() or not I.contains(x):
            best_failure = "candidate not in I"
            continue
        if I2.contains(x):
            if best is None:
                best, best_failure = x, "candidate lies in I^2"
            continue
        analysis = ReesAnalysis(I, x, limits)
        try:
            flags = {n: analysis.colon_eq(n) for n in range(1, limits.n_max + 1)}
            k = _trailing_start(flags, limits.n_max, limits.window, "superficial colon window")
        except StabilizationBudgetExceededError:
            best, best_failure = x, "colon window (I^{n+1}:x)=I^n never settled"
            continue
        if d >= 2:
            quotient_fit = fit_hilbert_polynomial(analysis.filtration.seq(), limits)
            e_pairs = tuple(
                (ideal_e[i], quotient_fit.e[i]) for i in range(d)
            )
            if any(ideal_e[i] != quotient_fit.e[i] for i in range(d - 1)):
                best, best_failure = x, "Hilbert coefficients moved under the quotient"
                continue
        else:
            e_pairs = ()
        cert = SuperficialCertificate(
            element=x,
            coefficients=coeffs,
            e_pairs=e_pairs,
            e_checked=d - 2,
            colon_window=(k, limits.n_max),
            in_I_not_I2=True,
        )
        return cert, analysis

    raise NoSuperficialFoundError(
        f"no superficial element for {I!r} after {trials} draws",
        best_candidate=best,
        failing_check=best_failure,
    )


@dataclass
class RRReport:
    """Ratliff-Rush summary: closures of powers, indices, diagnostics."""

    powers: dict
    rho: int
    rho_x: int
    omega: int | None
    rho_quotient: int | None
    superficial: SuperficialCertificate | None
    diagnostics: dict

    def to_dict(self) -> dict:
        return {
            "powers": {
                str(m): {
                    "tilde": [str(g) for g in entry.ideal.gens],
                    "settled_at": entry.settled_at,
                    "closed": closed,
                }
                for m, (entry, closed) in sorted(self.powers.items())
            },
            "rho": self.rho,
            "rho_x": self.rho_x,
            "omega": self.omega,
            "rho_quotient": self.rho_quotient,
            "superficial": self.superficial.to_dict() if self.superficial else None,
            "diagnostics": self.diagnostics,
        }


def rr_report(
    analysis: ReesAnalysis,
    cert: SuperficialCertificate | None = None,
    with_omega: bool = True,
) -> RRReport:
    rho, diag = analysis.rho()
    powers = {}
    for m in range(1, analysis.limits.n_max + 1):
        entry = analysis.tilde(m)
        powers[m] = (entry, ideal_equal(entry.ideal, ideal_power(analysis.I, m)))
    omega = analysis.omega() if with_omega else None
    rho_q = analysis.rho_quotient() if with_omega else None
    return RRReport(
        powers=powers,
        rho=rho,
        rho_x=diag["rho_colon"],
        omega=omega,
        rho_quotient=rho_q,
        superficial=cert,
        diagnostics=diag,
    )
