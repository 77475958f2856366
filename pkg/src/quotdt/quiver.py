"""Framed representations of the three-loop quiver over Q or F_p.

A representation is ``(A, B, C, v_1..v_r)`` with A, B, C square n x n
matrices acting on column vectors from the left.  ``E_ij`` denotes the
matrix unit with a single 1 in row i, column j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Iterator, Sequence

from .errors import CostGuardExceeded, InvalidInput
from .macmahon import DEFAULT_ENUMERATION_BOUND, colored_count
from .ringcore import format_scalar, parse_scalar

Vector = tuple
Matrix = tuple


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


class Field:
    """The rationals (``p=None``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise InvalidInput(f"F_{p}: characteristic must be prime")
        self.p = p

    @classmethod
    def parse(cls, name: str) -> Field:
        if name == "Q":
            return cls()
        if name.startswith("Fp:"):
            try:
                return cls(int(name[3:]))
            except ValueError:
                pass
        raise InvalidInput(f"field must be 'Q' or 'Fp:<p>', got {name!r}")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(self.p)

    def __repr__(self) -> str:
        return f"Field({self.name})"

    def __call__(self, x: Any) -> Any:
        if isinstance(x, str):
            x = parse_scalar(x)
        if isinstance(x, int) and self.p is not None:
            return x % self.p
        if self.p is None:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise InvalidInput(f"{x} has no image in F_{self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def reduce(self, x: Any) -> Any:
        return x if self.p is None else x % self.p

    def inv(self, x: Any) -> Any:
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x if self.p is None else pow(x, -1, self.p)

    def elements(self) -> range:
        if self.p is None:
            raise InvalidInput("Q is infinite")
        return range(self.p)


QQ = Field()


def mat_vec(F: Field, M: Matrix, v: Vector) -> Vector:
    return tuple(F.reduce(sum(a * b for a, b in zip(row, v))) for row in M)


def mat_mul(F: Field, X: Matrix, Y: Matrix) -> Matrix:
    cols = list(zip(*Y))
    return tuple(tuple(F.reduce(sum(a * b for a, b in zip(row, col))) for col in cols) for row in X)


def mat_sub(F: Field, X: Matrix, Y: Matrix) -> Matrix:
    return tuple(tuple(F.reduce(a - b) for a, b in zip(r1, r2)) for r1, r2 in zip(X, Y))


def transpose(X: Matrix) -> Matrix:
    return tuple(zip(*X)) if X else ()


def trace(F: Field, X: Matrix) -> Any:
    return F.reduce(sum(X[i][i] for i in range(len(X))))


def commutator(F: Field, X: Matrix, Y: Matrix) -> Matrix:
    return mat_sub(F, mat_mul(F, X, Y), mat_mul(F, Y, X))


def is_zero_matrix(X: Matrix) -> bool:
    return not any(any(row) for row in X)


def mat_inverse(F: Field, X: Matrix) -> Matrix:
    n = len(X)
    aug = [list(row) + [F(int(i == j)) for j in range(n)] for i, row in enumerate(X)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise InvalidInput("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        s = F.inv(aug[col][col])
        aug[col] = [F.reduce(x * s) for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [F.reduce(a - f * b) for a, b in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class Span:
    """Subspace of F^n kept as a reduced row-echelon basis."""

    def __init__(self, F: Field, n: int, vectors: Iterable[Vector] = ()):
        self.F = F
        self.n = n
        self.rows: list[list] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def residue(self, v: Vector) -> list:
        F = self.F
        w = list(v)
        for row, c in zip(self.rows, self.pivots):
            if w[c]:
                f = w[c]
                w = [F.reduce(a - f * b) for a, b in zip(w, row)]
        return w

    def __contains__(self, v: Vector) -> bool:
        return not any(self.residue(v))

    def add(self, v: Vector) -> bool:
        F = self.F
        w = self.residue(v)
        c = next((i for i, x in enumerate(w) if x), None)
        if c is None:
            return False
        s = F.inv(w[c])
        w = [F.reduce(x * s) for x in w]
        for k, row in enumerate(self.rows):
            if row[c]:
                f = row[c]
                self.rows[k] = [F.reduce(a - f * b) for a, b in zip(row, w)]
        self.rows.append(w)
        self.pivots.append(c)
        order = sorted(range(len(self.pivots)), key=self.pivots.__getitem__)
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    def basis(self) -> list[Vector]:
        return [tuple(r) for r in self.rows]


@dataclass(frozen=True)
class FramedRep:
    """Point of End(V_n)^3 x V_n^r for the framed three-loop quiver."""

    A: Matrix
    B: Matrix
    C: Matrix
    framing: tuple[Vector, ...]
    field: Field = QQ

    def __post_init__(self):
        F = self.field
        n = len(self.A)
        for name in ("A", "B", "C"):
            M = getattr(self, name)
            if len(M) != n or any(len(row) != n for row in M):
                raise InvalidInput(f"{name} must be {n}x{n}")
            object.__setattr__(self, name, tuple(tuple(F(x) for x in row) for row in M))
        if len(self.framing) < 1:
            raise InvalidInput("framing rank r must be >= 1")
        if any(len(v) != n for v in self.framing):
            raise InvalidInput(f"framing vectors must have length {n}")
        object.__setattr__(self, "framing", tuple(tuple(F(x) for x in v) for v in self.framing))

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def r(self) -> int:
        return len(self.framing)

    @property
    def operators(self) -> tuple[Matrix, Matrix, Matrix]:
        return self.A, self.B, self.C

    def conjugate(self, g: Matrix) -> FramedRep:
        """``(gAg^-1, gBg^-1, gCg^-1, g v)``."""
        F = self.field
        gi = mat_inverse(F, g)
        A, B, C = (mat_mul(F, mat_mul(F, g, M), gi) for M in self.operators)
        return FramedRep(A, B, C, tuple(mat_vec(F, g, v) for v in self.framing), F)

    def to_json(self) -> dict:
        def m(M):
            return [[format_scalar(x) for x in row] for row in M]

        return {"n": self.n, "r": self.r, "field": self.field.name,
                "A": m(self.A), "B": m(self.B), "C": m(self.C), "v": m(self.framing)}

    @classmethod
    def from_json(cls, obj: dict) -> FramedRep:
        try:
            F = Field.parse(obj.get("field", "Q"))
            rep = cls(obj["A"], obj["B"], obj["C"], tuple(obj["v"]), F)
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed FramedRep payload: {exc}") from None
        for key, expected in (("n", rep.n), ("r", rep.r)):
            if key in obj and int(obj[key]) != expected:
                raise InvalidInput(f"declared {key}={obj[key]} but data has {key}={expected}")
        return rep


@dataclass(frozen=True)
class Theta:
    """Stability parameter: ``theta1`` on the framing vertex, ``theta2`` on the loop vertex."""

    theta1: Fraction
    theta2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta1", Fraction(self.theta1))
        object.__setattr__(self, "theta2", Fraction(self.theta2))


def slope(theta: Theta, d: Sequence[int]) -> Fraction:
    """``theta . d / |d|`` for a dimension vector ``d = (framing, vertex)``."""
    d1, d2 = d
    if d1 < 0 or d2 < 0:
        raise InvalidInput("dimension vectors are nonnegative")
    total = d1 + d2
    if total == 0:
        raise InvalidInput("slope of the zero dimension vector is undefined")
    return (theta.theta1 * d1 + theta.theta2 * d2) / total


def generation_closure(rep: FramedRep) -> tuple[int, list[Vector]]:
    """Smallest A,B,C-invariant subspace containing every framing vector."""
    span = Span(rep.field, rep.n, rep.framing)
    for _ in range(rep.n):
        grew = False
        for b in span.basis():
            for M in rep.operators:
                grew |= span.add(mat_vec(rep.field, M, b))
        if not grew:
            break
    return span.dim, span.basis()


def is_stable_via_generation(rep: FramedRep, theta: Theta) -> bool:
    """θ-stable iff the framing vectors jointly generate (needs theta1 >= theta2)."""
    if theta.theta1 < theta.theta2:
        raise InvalidInput("criterion requires theta1 >= theta2")
    return generation_closure(rep)[0] == rep.n


class Verdict(str, Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    UNSTABLE = "unstable"


@lru_cache(maxsize=None)
def _subspaces_with_pivots(n: int, p: int) -> tuple:
    return tuple((W, tuple(row.index(1) for row in W)) for W in subspaces(n, p))


@lru_cache(maxsize=None)
def subspaces(n: int, p: int) -> tuple[tuple[Vector, ...], ...]:
    """Every subspace of F_p^n exactly once, as its reduced row-echelon basis."""
    out = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for i, c in enumerate(pivots):
                    rows[i][c] = 1
                for (i, j), x in zip(free, values):
                    rows[i][j] = x
                out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


def _in_echelon_span(basis: Sequence[Vector], pivots: Sequence[int], v: Vector, p: int) -> bool:
    w = list(v)
    for row, c in zip(basis, pivots):
        if w[c]:
            f = w[c]
            w = [(a - f * b) % p for a, b in zip(w, row)]
    return not any(w)


def brute_force_stability(rep: FramedRep, theta: Theta, max_n: int = 3, max_p: int = 7) -> Verdict:
    """Stability verdict by checking every subrepresentation against the slope of the whole.

    Subrepresentations are pairs (d1, W): W an A,B,C-invariant subspace and
    d1 in {0, 1}, where d1 = 1 needs every framing vector inside W.
    """
    p = rep.field.p
    if p is None:
        raise InvalidInput("brute-force oracle needs a finite field")
    if rep.n > max_n or p > max_p:
        raise CostGuardExceeded(f"oracle limited to n <= {max_n}, p <= {max_p}")
    n = rep.n
    whole = slope(theta, (1, n))
    semistable_only = False
    for W, pivots in _subspaces_with_pivots(n, p):
        invariant = all(
            _in_echelon_span(W, pivots, mat_vec(rep.field, M, b), p)
            for M in rep.operators
            for b in W
        )
        if not invariant:
            continue
        k = len(W)
        framing_inside = all(_in_echelon_span(W, pivots, v, p) for v in rep.framing)
        for d1 in (0, 1):
            if d1 == 1 and not framing_inside:
                continue
            if (d1, k) in ((0, 0), (1, n)):
                continue
            s = slope(theta, (d1, k))
            if s > whole:
                return Verdict.UNSTABLE
            if s == whole:
                semistable_only = True
    return Verdict.STRICTLY_SEMISTABLE if semistable_only else Verdict.STABLE


def potential_value(rep: FramedRep) -> Any:
    """``Tr A[B, C] = Tr(ABC) - Tr(ACB)``; framing vectors play no role."""
    F = rep.field
    A, B, C = rep.operators
    return F.reduce(trace(F, mat_mul(F, A, mat_mul(F, B, C))) - trace(F, mat_mul(F, A, mat_mul(F, C, B))))


def potential_gradient(rep: FramedRep) -> tuple[Matrix, Matrix, Matrix]:
    """Entrywise partial derivatives of the potential: ``([B,C]^T, [C,A]^T, [A,B]^T)``."""
    F = rep.field
    A, B, C = rep.operators
    return (
        transpose(commutator(F, B, C)),
        transpose(commutator(F, C, A)),
        transpose(commutator(F, A, B)),
    )


def commutators(rep: FramedRep) -> tuple[Matrix, Matrix, Matrix]:
    F = rep.field
    A, B, C = rep.operators
    return commutator(F, A, B), commutator(F, B, C), commutator(F, C, A)


def is_critical_point(rep: FramedRep) -> bool:
    grad_zero = all(is_zero_matrix(G) for G in potential_gradient(rep))
    comm_zero = all(is_zero_matrix(X) for X in commutators(rep))
    if grad_zero != comm_zero:
        raise AssertionError("vanishing gradient and commuting operators disagree")
    return grad_zero


def fixed_point_count(r: int, n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> int:
    """Torus-fixed points of the Quot scheme of length-n quotients of O^r on A^3:
    r-tuples of plane partitions of total size n.
    """
    return colored_count(r, n, bound)


def random_rep(rng, n: int, r: int, field: Field, entries: Sequence[Any] | None = None,
               zero_bias: float = 0.0) -> FramedRep:
    """Random representation; ``entries`` is the value pool, ``zero_bias`` the chance of a zero."""
    pool = list(entries) if entries is not None else list(field.elements())

    def x():
        return 0 if zero_bias and rng.random() < zero_bias else rng.choice(pool)

    mats = [tuple(tuple(x() for _ in range(n)) for _ in range(n)) for _ in range(3)]
    framing = tuple(tuple(x() for _ in range(n)) for _ in range(r))
    return FramedRep(*mats, framing, field)


def iter_all_reps(n: int, r: int, field: Field) -> Iterator[FramedRep]:
    """Every representation over a finite field (size |F|^(3n^2 + rn))."""
    elems = field.elements()
    size = 3 * n * n + r * n
    for flat in itertools.product(elems, repeat=size):
        mats = [
            tuple(tuple(flat[s * n * n + i * n: s * n * n + (i + 1) * n]) for i in range(n))
            for s in range(3)
        ]
        off = 3 * n * n
        framing = tuple(tuple(flat[off + l * n: off + (l + 1) * n]) for l in range(r))
        yield FramedRep(*mats, framing, field)
