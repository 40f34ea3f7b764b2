"""Budget knobs shared by the chain, fit, sampling, and Groebner layers."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .groebner import GBLimits


@dataclass(frozen=True)
class Limits:
    """All scan/stabilization budgets in one place.

    `n_max` bounds every chain and window scan, `window` is the trailing
    equality run required before a chain is declared settled.  `floor`
    (None = -2d) stops the downward postulation scan.  The Groebner degree
    cap scales itself to the input degrees unless pinned here.
    """

    n_max: int = 12
    window: int = 2
    samples: int = 20
    trials: int = 8
    rd_n_max: int = 12
    fit_window: int = 3
    floor: int | None = None
    gb_max_pairs: int = 50_000
    gb_max_degree: int | None = None  # None: auto-scale with input degree

    def floor_for(self, dimension: int) -> int:
        return -2 * dimension if self.floor is None else self.floor

    def gb(self, max_input_degree: int = 0) -> GBLimits:
        if self.gb_max_degree is not None:
            degree = self.gb_max_degree
        else:
            degree = max(80, 2 * max_input_degree + 10)
        return GBLimits(self.gb_max_pairs, degree)

    def doubled(self) -> "Limits":
        degree = None if self.gb_max_degree is None else 2 * self.gb_max_degree
        return replace(
            self,
            n_max=2 * self.n_max,
            rd_n_max=2 * self.rd_n_max,
            gb_max_pairs=2 * self.gb_max_pairs,
            gb_max_degree=degree,
        )

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "window": self.window,
            "samples": self.samples,
            "trials": self.trials,
            "rd_n_max": self.rd_n_max,
            "fit_window": self.fit_window,
            "floor": self.floor,
            "gb_max_pairs": self.gb_max_pairs,
            "gb_max_degree": self.gb_max_degree,
        }


DEFAULT_LIMITS = Limits()
