"""One-ideal analysis session: shared caches for every downstream consumer.

A session owns the ideal's Hilbert data, a certified superficial element,
the Ratliff-Rush analysis bound to it, the quotient filtration's Hilbert
data, and the reduction sampling report.  The theorem harness and the CLI
both drive sessions; everything is deterministic given (ideal, limits,
seed, optional supplied element).
"""

from __future__ import annotations

from .hilbert import (
    BelowFloor,
    HilbertReport,
    fit_hilbert_polynomial,
    hilbert_report,
    ideal_hilbert_seq,
)
from .ideals import Ideal, is_m_primary, monomial_integral_closure
from .errors import NotMPrimaryError
from .limits import DEFAULT_LIMITS, Limits
from .poly import Polynomial
from .reductions import ReductionReport, reduction_number_estimate
from .rees import (
    ReesAnalysis,
    RRReport,
    SuperficialCertificate,
    find_superficial,
    rr_report,
)


class AnalysisSession:
    def __init__(
        self,
        I: Ideal,
        limits: Limits = DEFAULT_LIMITS,
        seed: int = 0,
        element: Polynomial | None = None,
        with_omega: bool | None = None,
        samples: int | None = None,
        with_rees: bool = True,
    ):
        if not is_m_primary(I):
            raise NotMPrimaryError(f"analysis needs an m-primary ideal, got {I!r}")
        self.I = I
        self.limits = limits
        self.seed = seed
        self.supplied_element = element
        self.with_rees = with_rees
        self.with_omega = (
            (I.ring.dimension == 2 and with_rees) if with_omega is None else with_omega
        )
        self.samples = limits.samples if samples is None else samples
        self._seq = None
        self._fit = None
        self._cert = None
        self._rees = None
        self._hilbert = None
        self._quotient = None
        self._reductions = None
        self._rho = None

    # -- Hilbert side ---------------------------------------------------

    def seq(self):
        if self._seq is None:
            self._seq = ideal_hilbert_seq(self.I, self.limits)
        return self._seq

    def fit(self):
        if self._fit is None:
            self._fit = fit_hilbert_polynomial(self.seq(), self.limits)
        return self._fit

    @property
    def hilbert(self) -> HilbertReport:
        if self._hilbert is None:
            delta_from = min(self.rho, self.limits.n_max) if self.with_rees else 1
            self._hilbert = hilbert_report(self.seq(), self.limits, delta_from=delta_from)
        return self._hilbert

    @property
    def quotient(self) -> HilbertReport:
        if self._quotient is None:
            self._quotient = hilbert_report(
                self.rees.filtration.seq(), self.limits, delta_from=0
            )
        return self._quotient

    def postulation(self) -> int | BelowFloor:
        return self.hilbert.postulation

    # -- superficial element and Ratliff-Rush side -----------------------

    def _ensure_superficial(self):
        if self._cert is None:
            self._cert, self._rees = find_superficial(
                self.I,
                trials=self.limits.trials,
                seed=self.seed,
                limits=self.limits,
                supplied=self.supplied_element,
                ideal_e=self.fit().e,
            )

    @property
    def cert(self) -> SuperficialCertificate:
        self._ensure_superficial()
        return self._cert

    @property
    def rees(self) -> ReesAnalysis:
        self._ensure_superficial()
        return self._rees

    @property
    def rho(self) -> int:
        if self._rho is None:
            self._rho = self.rees.rho()
        return self._rho[0]

    @property
    def rho_diagnostics(self) -> dict:
        _ = self.rho
        return self._rho[1]

    @property
    def omega(self) -> int | None:
        return self.rees.omega() if self.with_omega else None

    @property
    def rho_quotient(self) -> int | None:
        return self.rees.rho_quotient() if self.with_omega else None

    # -- reductions -------------------------------------------------------

    @property
    def reductions(self) -> ReductionReport:
        if self._reductions is None:
            post = self.hilbert.postulation_value()
            self._reductions = reduction_number_estimate(
                self.I,
                count=self.samples,
                seed=self.seed,
                limits=self.limits,
                postulation=post,
                superficial_first=self.cert.element if self.with_rees else None,
            )
        return self._reductions

    # -- composite reporting ----------------------------------------------

    def rr(self, with_powers: bool = True) -> RRReport:
        return rr_report(self.rees, self.cert, with_omega=self.with_omega)

    def integral_closure_flags(self) -> dict:
        if not self.I.is_monomial or self.I.ring.dimension > 3:
            return {"applicable": False}
        closure = monomial_integral_closure(self.I)
        return {
            "applicable": True,
            "integrally_closed": closure.monomial_gens() == self.I.monomial_gens(),
            "closure": [str(g) for g in closure.gens],
        }

    def document(self, theorems: list | None = None) -> dict:
        rr = self.rr() if self.with_rees else None
        doc = {
            "schema": "rrcalc-report-v1",
            "ring": {
                "variables": list(self.I.ring.variables),
                "dimension": self.I.ring.dimension,
                "order": self.I.ring.order.kind,
            },
            "ideal": {
                "generators": [str(g) for g in self.I.gens],
                "is_monomial": self.I.is_monomial,
                "m_primary": True,
                "integral_closure": self.integral_closure_flags(),
            },
            "hilbert": self.hilbert.to_dict(),
            "ratliff_rush": (
                {**rr.to_dict(), "quotient_hilbert": self.quotient.to_dict()}
                if rr is not None
                else None
            ),
            "reductions": self.reductions.to_dict(),
            "theorems": [v.to_dict() for v in theorems] if theorems else [],
            "budgets": self.limits.to_dict(),
            "seed": self.seed,
        }
        return doc
