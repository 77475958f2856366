"""Exact generating series for Quot schemes on A^3, local DT/PT wall-crossing,
BPS expansions and the framed three-loop quiver."""

from .errors import CostGuardExceeded, InvalidInput
from .ringcore import HalfLaurent, LaurentSeries, TruncSeries

__version__ = "0.1.0"

__all__ = ["CostGuardExceeded", "HalfLaurent", "InvalidInput", "LaurentSeries", "TruncSeries"]
