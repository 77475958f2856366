"""MacMahon function, plane-partition enumeration and wall-crossing factors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import CostGuardExceeded, InvalidInput
from .ringcore import (
    TruncSeries,
    series_exp,
    series_log,
    series_pow,
    substitute_sign,
)

DEFAULT_ENUMERATION_BOUND = 12

Box = tuple[int, int, int]


@dataclass(frozen=True)
class PlanePartition:
    """A finite downward-closed set of unit boxes in the positive octant."""

    boxes: frozenset[Box]

    def __post_init__(self):
        for (i, j, k) in self.boxes:
            if min(i, j, k) < 0:
                raise InvalidInput(f"box {(i, j, k)} has a negative coordinate")
            for nb in ((i - 1, j, k), (i, j - 1, k), (i, j, k - 1)):
                if min(nb) >= 0 and nb not in self.boxes:
                    raise InvalidInput(f"box {(i, j, k)} is unsupported: {nb} missing")

    @property
    def size(self) -> int:
        return len(self.boxes)

    @classmethod
    def from_layers(cls, layers: list[tuple[int, ...]]) -> PlanePartition:
        """Layer ``k`` is a Young diagram (row lengths) at height ``k``."""
        boxes = {
            (i, j, k)
            for k, shape in enumerate(layers)
            for i, row in enumerate(shape)
            for j in range(row)
        }
        return cls(frozenset(boxes))


@dataclass(frozen=True)
class ColoredPartitionTuple:
    parts: tuple[PlanePartition, ...]

    def __post_init__(self):
        if len(self.parts) < 1:
            raise InvalidInput("a colored tuple needs r >= 1 parts")

    @property
    def size(self) -> int:
        return sum(p.size for p in self.parts)


def _check_bound(n: int, bound: int) -> None:
    if n < 0:
        raise InvalidInput(f"size must be >= 0, got {n}")
    if n > bound:
        raise CostGuardExceeded(
            f"n={n} exceeds the enumeration bound {bound}; raise the bound explicitly"
        )


def _sub_diagrams(shape: tuple[int, ...], max_size: int) -> Iterator[tuple[int, ...]]:
    """Nonempty Young diagrams contained in ``shape`` with at most ``max_size`` boxes."""
    acc: list[int] = []

    def rec(i: int, cap: int, remaining: int):
        if acc:
            yield tuple(acc)
        if i >= len(shape):
            return
        for part in range(1, min(shape[i], cap, remaining) + 1):
            acc.append(part)
            yield from rec(i + 1, part, remaining - part)
            acc.pop()

    yield from rec(0, max_size, max_size)


@lru_cache(maxsize=None)
def _stack_count(n: int, shape: tuple[int, ...]) -> int:
    # stacks of nonempty layers, each inside the one below, first inside `shape`
    if n == 0:
        return 1
    return sum(_stack_count(n - sum(nu), nu) for nu in _sub_diagrams(shape, n))


def _stacks(n: int, shape: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
    if n == 0:
        yield []
        return
    for nu in _sub_diagrams(shape, n):
        for rest in _stacks(n - sum(nu), nu):
            yield [nu] + rest


def iter_plane_partitions(n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[PlanePartition]:
    """Every plane partition of size ``n``, each exactly once."""
    _check_bound(n, bound)
    for layers in _stacks(n, (n,) * n):
        yield PlanePartition.from_layers(layers)


def plane_partition_oracle(n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> int:
    """Number of plane partitions of ``n`` by layer-by-layer enumeration.

    Independent of the product formula: counts stacks of weakly shrinking
    Young diagrams, memoized on (remaining size, current layer).
    """
    _check_bound(n, bound)
    return _stack_count(n, (n,) * n)


def macmahon_series(order: int) -> TruncSeries:
    """``prod_{m>=1} (1 - q^m)^(-m)`` modulo ``q^(order+1)``."""
    if order < 0:
        raise InvalidInput("order must be >= 0")
    coeffs = [1] + [0] * order
    # multiply by 1/(1 - q^m) m times; each pass is a prefix-sum with stride m
    for m in range(1, order + 1):
        for _ in range(m):
            for n in range(m, order + 1):
                coeffs[n] += coeffs[n - m]
    return TruncSeries(coeffs)


def colored_count(r: int, n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> int:
    """Number of r-tuples of plane partitions of total size n.

    Computed as an r-fold convolution of enumeration counts and cross-checked
    against the coefficient of ``M(q)^r``.
    """
    if r < 1:
        raise InvalidInput("rank r must be >= 1")
    _check_bound(n, bound)
    counts = [plane_partition_oracle(k, bound) for k in range(n + 1)]
    conv = [1] + [0] * n
    for _ in range(r):
        conv = [sum(conv[a] * counts[b - a] for a in range(b + 1)) for b in range(n + 1)]
    via_power = series_pow(macmahon_series(n), r)[n]
    if conv[n] != via_power:
        raise AssertionError(
            f"enumeration ({conv[n]}) and MacMahon power ({via_power}) disagree at r={r}, n={n}"
        )
    return conv[n]


def wall_crossing_factor(r: int, chi: int, order: int) -> TruncSeries:
    """``M((-1)^r q)^(r chi)`` modulo ``q^(order+1)``."""
    if r < 1:
        raise InvalidInput("rank r must be >= 1")
    signed = substitute_sign(macmahon_series(order), (-1) ** r)
    return series_pow(signed, r * chi)


def n_invariants(chi: int, order: int) -> list[Fraction]:
    """``N_{m,0}`` for m = 1..order, defined by
    ``exp(sum (-1)^(m-1) m N_{m,0} q^m) = M(-q)^chi``.
    """
    logs = series_log(series_pow(substitute_sign(macmahon_series(order), -1), chi))
    return [Fraction((-1) ** (m - 1)) * logs[m] / m for m in range(1, order + 1)]


def n_invariants_roundtrip(r: int, chi: int, order: int) -> tuple[list[Fraction], TruncSeries]:
    """Extract the N-invariants, then rebuild ``exp(sum (-1)^(rm-1) r m N_{m,0} q^m)``.

    The rebuilt series equals :func:`wall_crossing_factor` ``(r, chi, order)``.
    """
    if r < 1:
        raise InvalidInput("rank r must be >= 1")
    ns = n_invariants(chi, order)
    exponent = [Fraction(0)] + [
        (-1) ** (r * m - 1) * r * m * ns[m - 1] for m in range(1, order + 1)
    ]
    return ns, series_exp(TruncSeries(exponent))
