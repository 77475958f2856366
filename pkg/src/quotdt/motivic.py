"""Motivic Quot-scheme series of the framed three-loop quiver and its Euler specialization.

The series is the closed product

    Z_r(t) = prod_{m>=1} prod_{k=0}^{rm-1} (1 - L^(2 + k - rm/2) t^m)^(-1)

with coefficients in Z[L^(1/2), L^(-1/2)].
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .macmahon import DEFAULT_ENUMERATION_BOUND, colored_count
from .ringcore import HalfLaurent, TruncSeries, euler_specialize


@dataclass(frozen=True)
class MotivicSeries:
    inner: TruncSeries
    rank: int

    def __post_init__(self):
        if self.inner[0] != HalfLaurent.constant(1):
            raise InvalidInput("motivic series must have constant coefficient 1")

    @property
    def order(self) -> int:
        return self.inner.order

    def __getitem__(self, n: int) -> HalfLaurent:
        return self.inner[n]

    def to_json(self) -> dict:
        return {"rank": self.rank, "order": self.order,
                "coeffs": [c.to_json() for c in self.inner]}


def factor_twice_exponents(r: int, m: int) -> list[int]:
    """Twice the L-exponents ``2 + k - rm/2`` of the factors at t^m."""
    return [4 + 2 * k - r * m for k in range(r * m)]


def motivic_quot_series(r: int, order: int) -> MotivicSeries:
    if r < 1:
        raise InvalidInput("rank r must be >= 1")
    if order < 0:
        raise InvalidInput("order must be >= 0")
    coeffs = [HalfLaurent.constant(1)] + [HalfLaurent()] * order
    for m in range(1, order + 1):
        for e in factor_twice_exponents(r, m):
            x = HalfLaurent.monomial(e)
            # multiply by 1/(1 - x t^m):  b_n = a_n + x b_{n-m}
            for n in range(m, order + 1):
                coeffs[n] = coeffs[n] + x * coeffs[n - m]
    return MotivicSeries(TruncSeries(coeffs), r)


def virtual_chi_series(r: int, order: int) -> TruncSeries:
    """Euler specialization of the motivic series; equals ``M((-1)^r t)^r``."""
    return motivic_quot_series(r, order).inner.map(euler_specialize)


def signed_chi_check(r: int, n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> tuple[int, int]:
    """``((-1)^(rn) * #fixed points, [t^n] virtual_chi_series)``; both entries agree."""
    count = colored_count(r, n, bound)
    return (-1) ** (r * n) * count, virtual_chi_series(r, n)[n]
