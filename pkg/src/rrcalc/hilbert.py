"""Hilbert-Samuel functions, polynomial fits, postulation numbers, deltas.

The same machinery serves the ideal filtration {I^n} (dimension d) and the
quotient filtration {I^n + (x)} (dimension d-1): both are just cached
integer sequences with the convention H(n) = 0 for n <= 0, while the
polynomial side is evaluated over all integers in the alternating binomial
basis  P(n) = e0*C(n+d-1, d) - e1*C(n+d-2, d-1) + ... + (-1)^d * e_d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AnchorNotFoundError, NotMPrimaryError
from .ideals import Ideal, ideal_power, is_m_primary, length_quotient
from .limits import DEFAULT_LIMITS, Limits


def binomial(n: int, k: int) -> int:
    """C(n, k) for any integer n (product formula), k >= 0."""
    if k < 0:
        raise ValueError("negative lower index")
    num, den = 1, 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return num // den


def basis_polynomial(i: int, d: int, n: int) -> int:
    """Value at n of the signed i-th binomial basis element in dimension d."""
    return (-1) ** i * binomial(n + d - 1 - i, d - i)


def eval_hsp(e, d: int, n: int) -> int:
    """Evaluate the Hilbert-Samuel polynomial with coefficients e at n."""
    return sum(e[i] * basis_polynomial(i, d, n) for i in range(d + 1))


def _solve_exact(rows, rhs):
    """Gaussian elimination over Fraction for a small square system."""
    k = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("singular fit system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


class HilbertSeq:
    """Cached integer sequence with H(n) = 0 for n <= 0."""

    __slots__ = ("_func", "_cache", "dimension", "label")

    def __init__(self, func, dimension: int, label: str = "H"):
        self._func = func
        self._cache = {}
        self.dimension = dimension
        self.label = label

    def __call__(self, n: int) -> int:
        if n <= 0:
            return 0
        if n not in self._cache:
            self._cache[n] = self._func(n)
        return self._cache[n]

    def known(self) -> dict:
        return dict(sorted(self._cache.items()))


@dataclass(frozen=True)
class BelowFloor:
    """Postulation scan exhausted: P = H everywhere down to `floor`."""

    floor: int

    def __repr__(self):
        return f"BelowFloor({self.floor})"


@dataclass
class HilbertFit:
    e: tuple
    anchor: int
    window: int


def fit_hilbert_polynomial(seq: HilbertSeq, limits: Limits = DEFAULT_LIMITS) -> HilbertFit:
    """Fit exact coefficients at the first anchor whose fit predicts onward.

    Solves for e at d+1 consecutive points starting at the anchor and
    accepts only when the fitted polynomial matches H at the next
    `fit_window` points and has integral e with e0 >= 1.
    """
    d = seq.dimension
    for anchor in range(1, limits.n_max + 1):
        rows = [
            [basis_polynomial(i, d, anchor + j) for i in range(d + 1)]
            for j in range(d + 1)
        ]
        rhs = [seq(anchor + j) for j in range(d + 1)]
        coeffs = _solve_exact(rows, rhs)
        if any(c.denominator != 1 for c in coeffs):
            continue
        e = tuple(int(c) for c in coeffs)
        if e[0] < 1:
            continue
        horizon = range(anchor + d + 1, anchor + d + 1 + limits.fit_window)
        if all(eval_hsp(e, d, n) == seq(n) for n in horizon):
            return HilbertFit(e, anchor, limits.fit_window)
    raise AnchorNotFoundError(
        f"no stable fit for {seq.label} with anchor <= {limits.n_max}; raise n_max"
    )


def postulation_number(
    seq: HilbertSeq, fit: HilbertFit, floor: int
) -> int | BelowFloor:
    """Largest n with P(n) != H(n), scanned downward from the anchor."""
    d = seq.dimension
    for n in range(fit.anchor - 1, floor - 1, -1):
        if eval_hsp(fit.e, d, n) != seq(n):
            return n
    return BelowFloor(floor)


def delta_table(
    seq: HilbertSeq, fit: HilbertFit, i_max: int, frm: int, to: int
) -> dict:
    """Forward differences of P - H: {i: {n: delta^i(P-H)(n)}} on [frm, to]."""
    d = seq.dimension
    g = {n: eval_hsp(fit.e, d, n) - seq(n) for n in range(frm, to + i_max + 1)}
    table = {}
    current = dict(g)
    for i in range(i_max + 1):
        table[i] = {n: current[n] for n in range(frm, to + 1)}
        current = {n: current[n + 1] - current[n] for n in range(frm, to + i_max - i)}
    return table


# -- the ideal filtration itself -----------------------------------------


def hilbert_function(I: Ideal, n: int, limits: Limits = DEFAULT_LIMITS) -> int:
    """lambda(R/I^n); 0 for n <= 0 since I^n = R there."""
    if n <= 0:
        return 0
    if not is_m_primary(I):
        raise NotMPrimaryError("Hilbert function needs an m-primary ideal")
    In = ideal_power(I, n)
    degree = max((g.total_degree() for g in In.gens), default=0)
    return length_quotient(In, limits.gb(degree))


def ideal_hilbert_seq(I: Ideal, limits: Limits = DEFAULT_LIMITS) -> HilbertSeq:
    return HilbertSeq(
        lambda n: hilbert_function(I, n, limits), I.ring.dimension, label=f"H_{I!r}"
    )


@dataclass
class HilbertReport:
    dimension: int
    e: tuple
    anchor: int
    fit_window: int
    postulation: int | BelowFloor
    H: dict
    delta: dict

    def polynomial_value(self, n: int) -> int:
        return eval_hsp(self.e, self.dimension, n)

    def postulation_value(self) -> int | None:
        return self.postulation if isinstance(self.postulation, int) else None

    def to_dict(self) -> dict:
        post = (
            self.postulation
            if isinstance(self.postulation, int)
            else {"below_floor": self.postulation.floor}
        )
        return {
            "dimension": self.dimension,
            "e": list(self.e),
            "anchor": self.anchor,
            "postulation": post,
            "H": {str(n): v for n, v in sorted(self.H.items())},
            "delta": {
                str(i): {str(n): v for n, v in sorted(tbl.items())}
                for i, tbl in sorted(self.delta.items())
            },
        }


def hilbert_report(
    seq: HilbertSeq,
    limits: Limits = DEFAULT_LIMITS,
    delta_from: int = 1,
    delta_to: int | None = None,
) -> HilbertReport:
    fit = fit_hilbert_polynomial(seq, limits)
    floor = limits.floor_for(seq.dimension)
    post = postulation_number(seq, fit, floor)
    to = delta_to if delta_to is not None else limits.n_max
    delta = delta_table(seq, fit, seq.dimension, delta_from, to)
    return HilbertReport(
        dimension=seq.dimension,
        e=fit.e,
        anchor=fit.anchor,
        fit_window=fit.window,
        postulation=post,
        H=seq.known(),
        delta=delta,
    )
