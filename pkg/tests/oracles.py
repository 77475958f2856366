"""Slow, obviously-correct reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy


@lru_cache(maxsize=None)
def naive_plane_partitions(n: int) -> frozenset[frozenset]:
    """All plane partitions of size n, grown one addable box at a time from the empty one."""
    if n == 0:
        return frozenset([frozenset()])
    out = set()
    for pp in naive_plane_partitions(n - 1):
        candidates = {(0, 0, 0)} | {
            (i + di, j + dj, k + dk)
            for (i, j, k) in pp
            for di, dj, dk in ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        }
        for (i, j, k) in candidates - pp:
            supported = all(
                nb in pp
                for nb in ((i - 1, j, k), (i, j - 1, k), (i, j, k - 1))
                if min(nb) >= 0
            )
            if supported:
                out.add(pp | {(i, j, k)})
    return frozenset(out)


def naive_colored_count(r: int, n: int) -> int:
    """Count r-tuples of plane partitions with total size n by summing over compositions."""
    if r == 0:
        return int(n == 0)
    return sum(len(naive_plane_partitions(a)) * naive_colored_count(r - 1, n - a) for a in range(n + 1))


def convolve(a: list[int], b: list[int]) -> list[int]:
    N = min(len(a), len(b))
    return [sum(a[k] * b[m - k] for k in range(m + 1)) for m in range(N)]


@lru_cache(maxsize=None)
def symbolic_gradient(n):
    """Entrywise derivatives of Tr(ABC) - Tr(ACB) computed by sympy."""
    mats = [sympy.Matrix(n, n, lambda i, j, s=s: sympy.Symbol(f"{s}_{i}_{j}")) for s in "ABC"]
    A, B, C = mats
    f = sympy.expand((A * B * C).trace() - (A * C * B).trace())
    symbols = [x for M in mats for x in M]
    derivs = [[[sympy.diff(f, M[i, j]) for j in range(n)] for i in range(n)] for M in mats]
    fns = [[[sympy.lambdify(symbols, d, modules=[{}]) for d in row] for row in D] for D in derivs]
    return fns


def sympy_grad(rep):
    values = [x for M in rep.operators for row in M for x in row]
    return tuple(
        tuple(tuple(Fraction(fn(*values)) for fn in row) for row in D) for D in symbolic_gradient(rep.n)
    )
