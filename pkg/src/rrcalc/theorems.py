"""Executable checks for the governing theorems, plus the fuzzing corpus.

Every check returns a TheoremVerdict; conclusions are only evaluated when
the hypothesis is satisfied, and `violated` verdicts carry a reproducible
witness.  A violation is retried once at doubled budgets before it is
flagged as persistent: premature stabilization windows are the usual
benign cause.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .analysis import AnalysisSession
from .errors import (
    NotAReductionError,
    RRCalcError,
)
from .hilbert import (
    BelowFloor,
    delta_table,
    eval_hsp,
    fit_hilbert_polynomial,
    ideal_hilbert_seq,
    postulation_number,
)
from .ideals import (
    Ideal,
    ideal_power,
    ideal_product,
    ideal_sum,
)
from .limits import DEFAULT_LIMITS, Limits
from .poly import Polynomial
from .reductions import first_local_equality, reduction_number_wrt
from .ring import RingCtx

SATISFIED = "satisfied"
NOT_SATISFIED = "not-satisfied"
UNDECIDABLE = "undecidable-at-budget"

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"
INCONCLUSIVE = "inconclusive"


@dataclass
class TheoremVerdict:
    theorem: str
    hypothesis: str
    conclusion: str
    witness: dict = field(default_factory=dict)
    budgets: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "witness": self.witness,
            "budgets": self.budgets,
        }


def _verdict(theorem, session, hypothesis, conclusion, witness) -> TheoremVerdict:
    return TheoremVerdict(
        theorem=theorem,
        hypothesis=hypothesis,
        conclusion=conclusion,
        witness=witness,
        budgets=session.limits.to_dict(),
    )


# -- individual checks ------------------------------------------------------


def check_lemma_2_4(session: AnalysisSession) -> TheoremVerdict:
    """H'(n) >= H(n) - H(n-1) for all n, and P' = P(n) - P(n-1) exactly."""
    H = session.seq()
    Hq = session.rees.filtration.seq()
    d = session.I.ring.dimension
    bad = [
        n
        for n in range(1, session.limits.n_max + 1)
        if Hq(n) < H(n) - H(n - 1)
    ]
    e = session.fit().e
    eq = session.quotient.e
    identity_ok = tuple(eq) == tuple(e[:d])
    witness = {
        "inequality_failures": bad,
        "delta_identity": {"e_quotient": list(eq), "e_delta": list(e[:d])},
    }
    ok = not bad and identity_ok
    return _verdict("lemma_2_4", session, SATISFIED, HOLDS if ok else VIOLATED, witness)


def check_prop_3_1(session: AnalysisSession) -> TheoremVerdict:
    """Postulation trichotomy for n(I) against rho(I) - 1."""
    n_i = session.hilbert.postulation
    n_q = session.quotient.postulation
    rho = session.rho
    witness = {
        "n": str(n_i),
        "n_quotient": str(n_q),
        "rho": rho,
    }
    if isinstance(n_i, BelowFloor) or isinstance(n_q, BelowFloor):
        witness["note"] = "postulation below scan floor; trichotomy untested"
        return _verdict("prop_3_1", session, SATISFIED, INCONCLUSIVE, witness)
    if n_i > rho - 1:
        ok = n_q == n_i + 1
        witness["case"] = "n > rho-1: n' = n+1"
    elif n_i == rho - 1:
        ok = n_q <= n_i + 1
        witness["case"] = "n = rho-1: n' <= n+1"
    else:
        ok = n_q >= n_i + 1
        witness["case"] = "n < rho-1: n' >= n+1"
    return _verdict("prop_3_1", session, SATISFIED, HOLDS if ok else VIOLATED, witness)


def check_thm_3_4_3_8(session: AnalysisSession) -> TheoremVerdict:
    """rd >= n+2 off the diagonal n = rho-1; rd_J <= n+2 for every J on it."""
    if session.I.ring.dimension != 2:
        return _verdict(
            "thm_3_4_3_8", session, NOT_SATISFIED, NOT_APPLICABLE, {"reason": "d != 2"}
        )
    rho = session.rho
    n_i = session.hilbert.postulation
    reds = session.reductions
    if reds.rd_min is None:
        return _verdict(
            "thm_3_4_3_8",
            session,
            UNDECIDABLE,
            INCONCLUSIVE,
            {"reason": "reduction sampling exhausted"},
        )
    n_val = n_i if isinstance(n_i, int) else n_i.floor  # below-floor: n(I) <= floor
    witness = {
        "n": str(n_i),
        "rho": rho,
        "rd_min": reds.rd_min,
        "rd_samples": sorted(reds.histogram.items()),
    }
    if isinstance(n_i, BelowFloor) or n_i != rho - 1:
        ok = reds.rd_min >= n_val + 2
        witness["case"] = "n != rho-1: rd(I) >= n+2"
        witness["independence_certified"] = ok
    else:
        bad = [s.rd for s in reds.samples if s.rd > n_val + 2]
        ok = not bad
        witness["case"] = "n = rho-1: rd_J <= n+2 for every sampled J"
        witness["violating_rd"] = bad
    return _verdict("thm_3_4_3_8", session, SATISFIED, HOLDS if ok else VIOLATED, witness)


def check_cor_4(session: AnalysisSession) -> list:
    """Cor 4.2 / 4.3 / 4.6 as three separate verdicts."""
    out = []
    if session.I.ring.dimension != 2 or not session.with_omega:
        reason = {"reason": "needs d = 2 with omega computed"}
        for name in ("cor_4_2", "cor_4_3", "cor_4_6"):
            out.append(_verdict(name, session, NOT_SATISFIED, NOT_APPLICABLE, reason))
        return out
    rho = session.rho
    omega = session.omega
    rho_q = session.rho_quotient
    reds = session.reductions

    if rho >= omega:
        ok = rho >= rho_q
        out.append(
            _verdict(
                "cor_4_2",
                session,
                SATISFIED,
                HOLDS if ok else VIOLATED,
                {"rho": rho, "omega": omega, "rho_quotient": rho_q},
            )
        )
    else:
        out.append(
            _verdict(
                "cor_4_2",
                session,
                NOT_SATISFIED,
                NOT_APPLICABLE,
                {"rho": rho, "omega": omega},
            )
        )

    if reds.rd_min is not None and rho >= reds.rd_min - 1:
        ok = rho >= rho_q
        out.append(
            _verdict(
                "cor_4_3",
                session,
                SATISFIED,
                HOLDS if ok else VIOLATED,
                {"rho": rho, "rd_min": reds.rd_min, "rho_quotient": rho_q},
            )
        )
    else:
        out.append(
            _verdict(
                "cor_4_3",
                session,
                NOT_SATISFIED,
                NOT_APPLICABLE,
                {"rho": rho, "rd_min": reds.rd_min},
            )
        )

    closure = session.integral_closure_flags()
    if (
        closure.get("applicable")
        and closure.get("integrally_closed")
        and reds.rd_min == 2
        and reds.verdict in ("independent-certified", "independent-likely")
    ):
        ok = omega == 1
        out.append(
            _verdict(
                "cor_4_6",
                session,
                SATISFIED,
                HOLDS if ok else VIOLATED,
                {"omega": omega, "rd_min": reds.rd_min},
            )
        )
    else:
        out.append(
            _verdict(
                "cor_4_6",
                session,
                NOT_SATISFIED,
                NOT_APPLICABLE,
                {
                    "integrally_closed": closure.get("integrally_closed"),
                    "rd_min": reds.rd_min,
                    "verdict": reds.verdict,
                },
            )
        )
    return out


def check_thm_5_6(session: AnalysisSession) -> TheoremVerdict:
    """(-1)^(d-i) delta^i(P - H) >= 0 on n >= rho, plus the onward-equality tail."""
    d = session.I.ring.dimension
    if d == 3 and (not session.with_omega or session.omega != 1):
        status = UNDECIDABLE if not session.with_omega else NOT_SATISFIED
        return _verdict(
            "thm_5_6",
            session,
            status,
            NOT_APPLICABLE,
            {"reason": "d = 3 needs omega = 1", "omega": session.omega},
        )
    if d > 3:
        return _verdict(
            "thm_5_6", session, NOT_SATISFIED, NOT_APPLICABLE, {"reason": "d > 3"}
        )
    rho = session.rho
    fit = session.fit()
    seq = session.seq()
    to = session.limits.n_max
    table = delta_table(seq, fit, d, rho, to)
    sign_failures = []
    for i in range(d + 1):
        sign = (-1) ** (d - i)
        for n, value in table[i].items():
            if sign * value < 0:
                sign_failures.append({"i": i, "n": n, "value": value})
    onward_failures = []
    first_equal = None
    for k in range(rho, to + 1):
        if eval_hsp(fit.e, d, k) == seq(k):
            first_equal = k
            break
    if first_equal is not None:
        onward_failures = [
            n
            for n in range(first_equal, to + 1)
            if eval_hsp(fit.e, d, n) != seq(n)
        ]
    witness = {
        "rho": rho,
        "sign_failures": sign_failures,
        "first_equal": first_equal,
        "onward_failures": onward_failures,
    }
    ok = not sign_failures and not onward_failures
    return _verdict("thm_5_6", session, SATISFIED, HOLDS if ok else VIOLATED, witness)


def _quotient_reduction_number(session: AnalysisSession, a: Polynomial, n_max: int):
    """rd of I' = I/(x) with respect to the principal (a mod x), on lifts."""
    I = session.I
    x_ideal = Ideal(I.ring, [session.cert.element])
    principal = Ideal(I.ring, [a])
    rd = first_local_equality(
        lambda n: ideal_sum(ideal_product(principal, ideal_power(I, n)), x_ideal),
        lambda n: session.rees.filtration.lifted(n + 1),
        n_max,
        session.limits,
    )
    if rd is None:
        raise NotAReductionError("no principal reduction within budget", n_max)
    return rd


def check_ooishi(session: AnalysisSession) -> TheoremVerdict:
    """dim-1 identity on the quotient: rd(I') = n(I') + 1."""
    if session.I.ring.dimension != 2:
        return _verdict(
            "ooishi_dim1", session, NOT_SATISFIED, NOT_APPLICABLE, {"reason": "d != 2"}
        )
    n_q = session.quotient.postulation
    if isinstance(n_q, BelowFloor):
        return _verdict(
            "ooishi_dim1",
            session,
            SATISFIED,
            INCONCLUSIVE,
            {"reason": "quotient postulation below floor"},
        )
    rng = random.Random(f"ooishi:{session.seed}")
    pool = [c for c in range(-9, 10) if c]
    rd_values = []
    for _ in range(4):
        a = Polynomial.zero(session.I.ring)
        for g in session.I.gens:
            a = a + g.scale(rng.choice(pool))
        try:
            rd_values.append(_quotient_reduction_number(session, a, session.limits.rd_n_max))
        except NotAReductionError:
            continue
        if len(rd_values) >= 2:
            break
    if not rd_values:
        return _verdict(
            "ooishi_dim1",
            session,
            UNDECIDABLE,
            INCONCLUSIVE,
            {"reason": "no principal reduction found in budget"},
        )
    witness = {"rd_quotient_samples": rd_values, "n_quotient": n_q}
    agree = len(set(rd_values)) == 1
    ok = agree and rd_values[0] == n_q + 1
    return _verdict("ooishi_dim1", session, SATISFIED, HOLDS if ok else VIOLATED, witness)


def check_northcott(session: AnalysisSession) -> TheoremVerdict:
    """dim-1 monotonicity on the quotient: P' - H' is nondecreasing."""
    if session.I.ring.dimension != 2:
        return _verdict(
            "northcott_dim1", session, NOT_SATISFIED, NOT_APPLICABLE, {"reason": "d != 2"}
        )
    rep = session.quotient
    seq = session.rees.filtration.seq()
    g = {
        n: eval_hsp(rep.e, 1, n) - seq(n)
        for n in range(0, session.limits.n_max + 1)
    }
    failures = [n for n in range(0, session.limits.n_max) if g[n + 1] < g[n]]
    return _verdict(
        "northcott_dim1",
        session,
        SATISFIED,
        HOLDS if not failures else VIOLATED,
        {"failures": failures, "values": {str(n): v for n, v in sorted(g.items())}},
    )


def check_reduction_multiplicity(session: AnalysisSession) -> TheoremVerdict:
    """Every sampled parameter reduction J has lambda(R/J) = e0(I)."""
    reds = session.reductions
    if not reds.samples:
        return _verdict(
            "reduction_multiplicity",
            session,
            UNDECIDABLE,
            INCONCLUSIVE,
            {"reason": "no samples"},
        )
    e0 = session.fit().e[0]
    bad = [s.colength for s in reds.samples if s.colength != e0]
    return _verdict(
        "reduction_multiplicity",
        session,
        SATISFIED,
        HOLDS if not bad else VIOLATED,
        {"e0": e0, "mismatched_colengths": bad},
    )


def check_marley_parameter(J: Ideal, limits: Limits) -> TheoremVerdict:
    """Parameter ideals: rd = 0 and the postulation sits at n = -d."""
    d = J.ring.dimension
    budgets = limits.to_dict()
    seq = ideal_hilbert_seq(J, limits)
    fit = fit_hilbert_polynomial(seq, limits)
    post = postulation_number(seq, fit, limits.floor_for(d))
    rd = reduction_number_wrt(J, J, 0, limits)
    ok = isinstance(post, int) and rd == post + d
    witness = {
        "generators": [str(g) for g in J.gens],
        "rd": rd,
        "postulation": str(post),
        "e": list(fit.e),
    }
    return TheoremVerdict(
        theorem="marley_parameter",
        hypothesis=SATISFIED,
        conclusion=HOLDS if ok else VIOLATED,
        witness=witness,
        budgets=budgets,
    )


ALL_CHECKS = (
    "lemma_2_4",
    "prop_3_1",
    "thm_3_4_3_8",
    "cor_4_2",
    "cor_4_3",
    "cor_4_6",
    "thm_5_6",
    "ooishi_dim1",
    "northcott_dim1",
    "reduction_multiplicity",
)


def run_checks(session: AnalysisSession) -> list:
    """All applicable checks for one session, budget errors downgraded."""
    verdicts = []

    def guarded(fn):
        try:
            result = fn(session)
        except RRCalcError as exc:
            name = getattr(fn, "__name__", "check").replace("check_", "")
            return [
                TheoremVerdict(
                    theorem=name,
                    hypothesis=UNDECIDABLE,
                    conclusion=INCONCLUSIVE,
                    witness={"error": f"{type(exc).__name__}: {exc}"},
                    budgets=session.limits.to_dict(),
                )
            ]
        return result if isinstance(result, list) else [result]

    for fn in (
        check_lemma_2_4,
        check_prop_3_1,
        check_thm_3_4_3_8,
        check_cor_4,
        check_thm_5_6,
        check_ooishi,
        check_northcott,
        check_reduction_multiplicity,
    ):
        verdicts.extend(guarded(fn))
    return verdicts


def has_violation(verdicts) -> bool:
    return any(v.conclusion == VIOLATED for v in verdicts)


def run_checks_with_triage(
    I: Ideal,
    limits: Limits = DEFAULT_LIMITS,
    seed: int = 0,
    element: Polynomial | None = None,
) -> tuple:
    """Checks with the standard triage: violations rerun at doubled budgets.

    Returns (verdicts, triage-note); persistent violations stay violated.
    """
    session = AnalysisSession(I, limits, seed, element=element)
    verdicts = run_checks(session)
    if not has_violation(verdicts):
        return verdicts, None
    retry_session = AnalysisSession(I, limits.doubled(), seed, element=element)
    retry = run_checks(retry_session)
    if has_violation(retry):
        return retry, "persistent: violation survived doubled budgets"
    return retry, "resolved at doubled budgets (stabilization-window artifact)"
