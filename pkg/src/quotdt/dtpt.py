"""Local DT/PT series conversion and the polynomial checks for reflexive sheaves."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

from .errors import InvalidInput
from .macmahon import macmahon_series
from .ringcore import TruncSeries, series_inv, series_pow, substitute_sign


class Flavor(str, Enum):
    BEHREND = "behrend-weighted"
    EULER = "euler"


@dataclass(frozen=True)
class LocalSeriesLabel:
    """Parameters the conversion depends on; ``sheaf_tag`` is opaque metadata."""

    rank: int
    chi: int
    flavor: Flavor = Flavor.BEHREND
    sheaf_tag: Any = None

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidInput("rank r must be >= 1")
        object.__setattr__(self, "flavor", Flavor(self.flavor))


def conversion_factor(rank: int, chi: int, flavor: Flavor, order: int) -> TruncSeries:
    """``M((-1)^r q)^(r chi)`` (Behrend-weighted) or ``M(q)^(r chi)`` (Euler)."""
    sign = (-1) ** rank if Flavor(flavor) is Flavor.BEHREND else 1
    return series_pow(substitute_sign(macmahon_series(order), sign), rank * chi)


def dt_pt_convert(series: TruncSeries, label: LocalSeriesLabel, direction: str) -> TruncSeries:
    """Multiply (pt->dt) or divide (dt->pt) by the wall-crossing factor."""
    factor = conversion_factor(label.rank, label.chi, label.flavor, series.order)
    if direction in ("pt2dt", "pt->dt"):
        return factor * series
    if direction in ("dt2pt", "dt->pt"):
        return series_inv(factor) * series
    raise InvalidInput(f"direction must be 'pt2dt' or 'dt2pt', got {direction!r}")


def _degree(P: Sequence[Any]) -> int:
    """Index of the last nonzero coefficient; -1 for the zero polynomial."""
    for i in range(len(P) - 1, -1, -1):
        if P[i]:
            return i
    return -1


def reciprocal_polynomial(P: Sequence[Any], d: int) -> list:
    """Coefficients of ``q^d P(1/q)``."""
    if d < _degree(P):
        raise InvalidInput(f"window degree {d} is below the degree {_degree(P)} of P")
    padded = list(P[: d + 1]) + [0] * (d + 1 - len(P))
    return padded[::-1]


def palindrome_check(P: Sequence[Any]) -> bool:
    d = _degree(P)
    if d < 0:
        return True
    core = list(P[: d + 1])
    return core == reciprocal_polynomial(core, d)


def reflexive_degree_check(P: Sequence[Any], ell: int) -> bool:
    """True iff P has degree exactly ``ell``."""
    if ell < 0:
        raise InvalidInput("expected length must be >= 0")
    return _degree(P) == ell
