"""Minimal reductions, reduction numbers, and sampled independence verdicts.

rd(I) is reported as a sampled upper bound (rd_min) plus a verdict, never
as ground truth: minimizing over all minimal reductions is not finitely
enumerable.  The one certification route is the classical criterion that a
single minimal reduction with rd_J >= n(I) + 2 forces independence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import NotAReductionError, NotMPrimaryError, SamplingExhaustedError
from .ideals import (
    Ideal,
    _augmented_equal,
    ideal_contains_ideal,
    ideal_equal,
    ideal_power,
    ideal_product,
    is_m_primary,
    local_colength,
    local_contains_bound,
    local_contains_sufficient,
)
from .limits import DEFAULT_LIMITS, Limits
from .poly import Polynomial


def first_local_equality(lhs_of, target_of, n_max: int, limits: Limits):
    """Smallest n <= n_max with lhs(n) = target(n) locally at the origin.

    Preconditions: lhs(n) is inside target(n), target(n) is m-primary, and
    local equality is monotone in n (true once true, as for reduction
    scans).  The upward scan uses only exact-true fast certificates
    (global equality, or residues confined to degrees past the m-adic
    bound); minimality is then confirmed downward with the exact
    augmented test, which usually runs just once.
    """
    seen = {}
    upper = None
    for n in range(n_max + 1):
        K, T = lhs_of(n), target_of(n)
        seen[n] = (K, T)
        deg = max(g.total_degree() for g in K.gens)
        gbl = limits.gb(deg)
        if ideal_equal(K, T, gbl):
            upper = n
            break
        bound = local_contains_bound(T, gbl) + 1
        if local_contains_sufficient(K, T, bound, gbl):
            upper = n
            break
    if upper is None:
        # fast certificates can stay inconclusive; rescan exactly
        for n in range(n_max + 1):
            K, T = seen[n]
            deg = max(g.total_degree() for g in K.gens)
            gbl = limits.gb(deg)
            bound = local_contains_bound(T, gbl) + 1
            if _augmented_equal(K, T, bound, gbl):
                upper = n
                break
        if upper is None:
            return None
        return upper
    m = upper - 1
    while m >= 0:
        K, T = seen[m]
        deg = max(g.total_degree() for g in K.gens)
        gbl = limits.gb(deg)
        bound = local_contains_bound(T, gbl) + 1
        if _augmented_equal(K, T, bound, gbl):
            upper = m
            m -= 1
        else:
            break
    return upper


def reduction_number_wrt(
    I: Ideal, J: Ideal, n_max: int | None = None, limits: Limits = DEFAULT_LIMITS
) -> int:
    """Smallest n with J.I^n = I^(n+1) (locally at the origin).

    Raises NotAReductionError past n_max.  The equality is a local-ring
    statement, so it is read through the exact m-adic augmentation; see
    `ideals.local_ideal_equal`.
    """
    if not is_m_primary(I):
        raise NotMPrimaryError("reduction numbers need an m-primary ideal")
    d = I.ring.dimension
    if len(J.gens) != d:
        raise ValueError(f"minimal reductions in dimension {d} carry {d} generators")
    if not ideal_contains_ideal(I, J):
        raise ValueError("J must be contained in I")
    n_max = limits.rd_n_max if n_max is None else n_max
    rd = first_local_equality(
        lambda n: ideal_product(J, ideal_power(I, n)),
        lambda n: ideal_power(I, n + 1),
        n_max,
        limits,
    )
    if rd is None:
        raise NotAReductionError(
            f"J.I^n != I^(n+1) for all n <= {n_max}; J may not be a reduction", n_max
        )
    return rd


@dataclass
class ReductionSample:
    ideal: Ideal
    coefficients: tuple | None  # rows of combination coefficients, or None
    rd: int
    colength: int  # lambda(R/J); equals e0(I) for honest parameter reductions

    def to_dict(self) -> dict:
        return {
            "generators": [str(g) for g in self.ideal.gens],
            "coefficients": [list(row) for row in self.coefficients]
            if self.coefficients
            else None,
            "rd": self.rd,
            "colength": self.colength,
        }


@dataclass
class ReductionReport:
    samples: list
    rd_min: int | None
    histogram: dict
    verdict: str  # independent-certified / independent-likely / varies / unknown
    seed: int
    requested: int
    n_max: int
    discarded: list
    criterion_conflict: bool = False

    def to_dict(self) -> dict:
        return {
            "samples": [s.to_dict() for s in self.samples],
            "rd_min": self.rd_min,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "verdict": self.verdict,
            "seed": self.seed,
            "requested": self.requested,
            "n_max": self.n_max,
            "discarded": self.discarded,
            "criterion_conflict": self.criterion_conflict,
        }


def _draw_rows(rng: random.Random, rows: int, cols: int) -> tuple:
    pool = [c for c in range(-9, 10) if c]
    return tuple(tuple(rng.choice(pool) for _ in range(cols)) for _ in range(rows))


def _combine(I: Ideal, row) -> Polynomial:
    out = Polynomial.zero(I.ring)
    for c, g in zip(row, I.gens):
        out = out + g.scale(c)
    return out


def sample_minimal_reductions(
    I: Ideal,
    count: int | None = None,
    seed: int = 0,
    superficial_first: Polynomial | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> tuple:
    """Sampled minimal reductions as (samples, discarded-diagnostics).

    Each J takes d generic combinations of I's generators (coefficients
    nonzero in [-9, 9]); when `superficial_first` is given it is installed
    as the first generator of every J.  Draws that fail m-primarity or the
    reduction scan are discarded and reported.
    """
    if not is_m_primary(I):
        raise NotMPrimaryError("reduction sampling needs an m-primary ideal")
    count = limits.samples if count is None else count
    d = I.ring.dimension
    rng = random.Random(f"reductions:{seed}")
    samples = []
    discarded = []
    attempts = 0
    max_attempts = max(8, 8 * count)
    while len(samples) < count and attempts < max_attempts:
        attempts += 1
        free_rows = d - (1 if superficial_first is not None else 0)
        rows = _draw_rows(rng, free_rows, len(I.gens))
        gens = [superficial_first] if superficial_first is not None else []
        gens += [_combine(I, row) for row in rows]
        J = Ideal(I.ring, gens)
        if len(J.gens) != d or not is_m_primary(J):
            discarded.append({"attempt": attempts, "reason": "not m-primary"})
            continue
        try:
            rd = reduction_number_wrt(I, J, limits.rd_n_max, limits)
        except NotAReductionError:
            discarded.append({"attempt": attempts, "reason": "not a reduction in budget"})
            continue
        # J.I^rd = I^(rd+1) locally puts m^N inside J_m for N = bound(I^(rd+1))
        bound = local_contains_bound(ideal_power(I, rd + 1))
        deg = max(max(g.total_degree() for g in J.gens), bound)
        samples.append(
            ReductionSample(
                ideal=J,
                coefficients=rows,
                rd=rd,
                colength=local_colength(J, bound, limits.gb(deg)),
            )
        )
    if len(samples) < count:
        raise SamplingExhaustedError(
            f"only {len(samples)}/{count} reductions found in {attempts} draws"
        )
    return samples, discarded


def reduction_number_estimate(
    I: Ideal,
    count: int | None = None,
    seed: int = 0,
    limits: Limits = DEFAULT_LIMITS,
    postulation: int | None = None,
    superficial_first: Polynomial | None = None,
) -> ReductionReport:
    """Sampled rd_min with an independence verdict.

    `postulation` (n(I), when an integer) enables the certification rule:
    some rd_J >= n(I) + 2 makes the reduction number independent, so rd_min
    is then rd(I) itself.
    """
    count = limits.samples if count is None else count
    try:
        samples, discarded = sample_minimal_reductions(
            I, count, seed, superficial_first, limits
        )
    except SamplingExhaustedError:
        return ReductionReport(
            samples=[],
            rd_min=None,
            histogram={},
            verdict="unknown",
            seed=seed,
            requested=count,
            n_max=limits.rd_n_max,
            discarded=[{"reason": "sampling exhausted"}],
        )
    rds = [s.rd for s in samples]
    histogram = {}
    for rd in rds:
        histogram[rd] = histogram.get(rd, 0) + 1
    rd_min = min(rds)
    all_agree = len(set(rds)) == 1
    criterion = postulation is not None and any(rd >= postulation + 2 for rd in rds)
    conflict = criterion and not all_agree
    if criterion and all_agree:
        verdict = "independent-certified"
    elif all_agree:
        verdict = "independent-likely"
    else:
        verdict = "varies"
    return ReductionReport(
        samples=samples,
        rd_min=rd_min,
        histogram=histogram,
        verdict=verdict,
        seed=seed,
        requested=count,
        n_max=limits.rd_n_max,
        discarded=discarded,
        criterion_conflict=conflict,
    )
