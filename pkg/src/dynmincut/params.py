"""Parameter bundle shared by the decomposition pipeline."""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction


def lambda_range(i: int) -> tuple[int, int]:
    """(lam_min, lam_max) for ladder index i: ceil(1.2^i), floor(1.2^(i+1))."""
    lo = math.ceil(1.2 ** i - 1e-12)
    hi = math.floor(1.2 ** (i + 1) + 1e-12)
    return lo, hi


@dataclasses.dataclass(frozen=True)
class Params:
    """Numeric knobs for one pipeline instance.

    delta and phi are exact rationals; nu and eps are derived.
    """

    lam_min: int
    lam_max: int
    delta: Fraction = Fraction(0)  # 0 means "derive the default"
    phi: Fraction = Fraction(1, 4)
    beta: int = 8
    rho: int = 8
    depth_cap: int = 8
    # iteration guard for the greedy-packing cycle search
    packing_iteration_cap: int = 20000

    def __post_init__(self) -> None:
        if self.lam_min < 1 or self.lam_max < self.lam_min:
            raise ValueError("need 1 <= lam_min <= lam_max")
        if 5 * self.lam_max > 6 * self.lam_min:  # lam_max <= 1.2 * lam_min
            raise ValueError("lam_max must be at most 1.2 * lam_min")
        if self.delta == 0:
            object.__setattr__(
                self, "delta", min(Fraction(1, 25), Fraction(1, 2 * self.lam_max + 1))
            )
        if not (0 < self.delta <= Fraction(1, 25)):
            raise ValueError("delta must lie in (0, 0.04]")
        if self.delta >= Fraction(1, 2 * self.lam_max):
            raise ValueError("delta must be < 1/(2*lam_max) for exactness")
        if not (0 < self.phi <= 1):
            raise ValueError("phi must lie in (0, 1]")
        if self.beta < 1:
            raise ValueError("beta must be >= 1")

    @property
    def eps(self) -> Fraction:
        return Fraction(1, 3 * self.beta)

    @property
    def nu(self) -> int:
        """Volume cap for local cuts: 4*lam_max/phi, rounded up."""
        return math.ceil(4 * self.lam_max / self.phi)

    @property
    def respect_bound(self) -> int:
        """floor(2*(1+eps)*beta): max packed-forest edges a candidate cut may cross."""
        return math.floor(2 * (1 + self.eps) * self.beta)

    def packing_k(self, m: int) -> int:
        """Forest count for a packing over m edges: ceil(6*lam_max*log2(m)/eps^2)."""
        m = max(2, m)
        return math.ceil(6 * self.lam_max * math.log2(m) / (self.eps * self.eps))


def ladder_params(i: int, **overrides) -> Params:
    lo, hi = lambda_range(i)
    return Params(lam_min=lo, lam_max=hi, **overrides)
