"""BPS expansion of cycle-local stable pair series.

A series ``Z(q) = sum_n P_n q^(1-g+n)`` is rational in the BPS sense when

    Z(q) = sum_{r=0}^{g} n_r q^(1-r) (1+q)^(2r-2).

The basis element for ``r`` starts at ``q^(1-r)`` with coefficient 1, so the
``n_r`` are found top-down by triangular elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import InvalidInput
from .ringcore import LaurentSeries


def _binom(a: int, j: int) -> int:
    """Generalized binomial coefficient ``C(a, j)`` for any integer ``a``."""
    if j < 0:
        return 0
    if a >= 0:
        return comb(a, j)
    return (-1) ** j * comb(j - a - 1, j)


@dataclass(frozen=True)
class BpsVector:
    genus: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidInput("genus must be >= 0")
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != self.genus + 1:
            raise InvalidInput(f"need {self.genus + 1} BPS numbers for genus {self.genus}")
        object.__setattr__(self, "values", vals)

    @property
    def integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)


def bps_basis_element(rr: int, g: int, window: tuple[int, int]) -> LaurentSeries:
    """``q^(1-rr) (1+q)^(2rr-2)`` on the exponent window ``[lo, hi]``."""
    lo, hi = window
    if not 0 <= rr <= g:
        raise InvalidInput(f"basis index {rr} outside 0..{g}")
    if lo > 1 - rr:
        raise InvalidInput(f"window must start at or below q^{1 - rr}")
    if hi < lo:
        raise InvalidInput(f"empty window [{lo}, {hi}]")
    base, power = 1 - rr, 2 * rr - 2
    return LaurentSeries(lo, [Fraction(_binom(power, e - base)) for e in range(lo, hi + 1)])


def bps_to_pt(v: BpsVector, window: tuple[int, int]) -> LaurentSeries:
    lo, hi = window
    if lo > 1 - v.genus:
        raise InvalidInput(f"window must start at or below q^{1 - v.genus}")
    total = LaurentSeries.zero(lo, hi)
    for rr, n in enumerate(v.values):
        if n:
            total = total + n * bps_basis_element(rr, v.genus, window)
    return total


def extract_bps(Z: LaurentSeries, g: int) -> tuple[BpsVector, LaurentSeries]:
    """Solve for ``n_g, ..., n_0`` and return them with the residual on ``[1-g, order]``.

    The residual vanishes iff Z agrees with a BPS expansion on the whole window.
    """
    if g < 0:
        raise InvalidInput("genus must be >= 0")
    lo = 1 - g
    if Z.offset < lo:
        raise InvalidInput(f"series starts at q^{Z.offset}, below q^{lo}")
    if Z.order < 1:
        raise InvalidInput(
            f"window [{lo}, {Z.order}] too short: need exponents {lo}..1 "
            f"(minimal length {g + 1})"
        )
    window = (lo, Z.order)
    residual = Z.on_window(*window)
    residual = LaurentSeries(lo, [Fraction(c) for c in residual.coeffs])
    values = [Fraction(0)] * (g + 1)
    for rr in range(g, -1, -1):
        n = residual.coefficient(1 - rr)
        values[rr] = n
        if n:
            residual = residual - n * bps_basis_element(rr, g, window)
    return BpsVector(g, tuple(values)), residual


def bps_summary(coeffs: Sequence, offset: int, genus: int) -> dict:
    """Payload used by the command line: BPS numbers and rationality flags."""
    v, residual = extract_bps(LaurentSeries(offset, [Fraction(c) for c in coeffs]), genus)
    return {
        "bps": [str(x) for x in v.values],
        "residual_zero": residual.is_zero(),
        "integral": v.integral,
    }
