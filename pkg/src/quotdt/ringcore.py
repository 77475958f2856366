"""Exact coefficient rings and truncated power / Laurent series.

Everything here is exact: coefficients are Python ints, ``Fraction`` or
:class:`HalfLaurent` (integer Laurent polynomials in ``L^(1/2)``).  All
values are immutable; every operation returns a new object.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .errors import InvalidInput

__all__ = [
    "HalfLaurent",
    "TruncSeries",
    "LaurentSeries",
    "series_arith",
    "series_inv",
    "series_pow",
    "series_exp",
    "series_log",
    "series_exp_log",
    "substitute_sign",
    "euler_specialize",
    "retruncate",
    "parse_scalar",
    "format_scalar",
]


class HalfLaurent:
    """Integer Laurent polynomial in ``L^(1/2)``.

    Terms are keyed by *twice* the exponent of ``L``, so ``L^(3/2)`` has key
    3 and ``L^2`` has key 4.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = int(c)
            if c:
                clean[int(k)] = c
        self._terms = clean

    @classmethod
    def monomial(cls, twice_exp: int, coeff: int = 1) -> HalfLaurent:
        return cls({twice_exp: coeff})

    @classmethod
    def constant(cls, c: int) -> HalfLaurent:
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _coerce(self, other: Any) -> HalfLaurent | None:
        if isinstance(other, HalfLaurent):
            return other
        if isinstance(other, int):
            return HalfLaurent.constant(other)
        return None

    def __add__(self, other: Any) -> HalfLaurent:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out.get(k, 0) + c
        return HalfLaurent(out)

    __radd__ = __add__

    def __neg__(self) -> HalfLaurent:
        return HalfLaurent({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Any) -> HalfLaurent:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> HalfLaurent:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> HalfLaurent:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in o._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return HalfLaurent(out)

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def inverse(self) -> HalfLaurent:
        if not self.is_unit():
            raise InvalidInput(f"{self!r} is not a unit of Z[L^(1/2), L^(-1/2)]")
        ((k, c),) = self._terms.items()
        return HalfLaurent({-k: c})

    def specialize(self, root: int = -1) -> int:
        """Evaluate at ``L^(1/2) = root`` (``root`` must be +-1)."""
        if root not in (1, -1):
            raise InvalidInput("only L^(1/2) -> +-1 keeps the value integral")
        return sum(c * (root ** (k % 2)) for k, c in self._terms.items())

    def to_json(self) -> dict:
        return {"terms": {str(k): str(c) for k, c in sorted(self._terms.items())}}

    @classmethod
    def from_json(cls, obj: dict) -> HalfLaurent:
        try:
            return cls({int(k): int(v) for k, v in obj["terms"].items()})
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InvalidInput(f"malformed HalfLaurent payload: {exc}") from None

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items()):
            if k == 0:
                mono = ""
            elif k == 2:
                mono = "L"
            elif k % 2 == 0:
                mono = f"L^{k // 2}"
            else:
                mono = f"L^({k}/2)"
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def euler_specialize(w: HalfLaurent) -> int:
    """Euler characteristic specialization ``L^(1/2) -> -1``."""
    return w.specialize(-1)


def _zero_like(c: Any) -> Any:
    return c - c


def _one_like(c: Any) -> Any:
    return _zero_like(c) + 1


def _unit_inverse(c: Any) -> Any:
    if isinstance(c, HalfLaurent):
        return c.inverse()
    if isinstance(c, int):
        if c not in (1, -1):
            raise InvalidInput(f"constant term {c} is not a unit in Z")
        return c
    if isinstance(c, Fraction):
        if c == 0:
            raise InvalidInput("constant term 0 is not invertible")
        return 1 / c
    raise InvalidInput(f"cannot invert coefficient of type {type(c).__name__}")


class TruncSeries:
    """Power series ``sum_{n<=N} c_n q^n`` known modulo ``q^(N+1)``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Any], order: int | None = None):
        cs = list(coeffs)
        if order is None:
            if not cs:
                raise InvalidInput("empty coefficient list needs an explicit order")
            order = len(cs) - 1
        if order < 0:
            raise InvalidInput("series order must be >= 0")
        zero = _zero_like(cs[0]) if cs else 0
        cs = cs[: order + 1] + [zero] * (order + 1 - len(cs))
        self._coeffs = tuple(cs)

    @classmethod
    def one(cls, order: int, like: Any = 1) -> TruncSeries:
        return cls([_one_like(like)], order)

    @classmethod
    def variable(cls, order: int) -> TruncSeries:
        return cls([0, 1], order)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, n: int) -> Any:
        return self._coeffs[n]

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"TruncSeries({list(self._coeffs)!r}, order={self.order})"

    def _check(self, other: TruncSeries) -> None:
        if not isinstance(other, TruncSeries):
            raise InvalidInput(f"expected TruncSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise InvalidInput(
                f"order mismatch: {self.order} vs {other.order} (use retruncate)"
            )

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self._coeffs, other._coeffs)])

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __neg__(self) -> TruncSeries:
        return TruncSeries([-a for a in self._coeffs])

    def __mul__(self, other: Any) -> TruncSeries:
        if not isinstance(other, TruncSeries):
            return TruncSeries([a * other for a in self._coeffs])
        self._check(other)
        a, b = self._coeffs, other._coeffs
        out = []
        for n in range(len(a)):
            acc = _zero_like(a[0])
            for k in range(n + 1):
                if a[k] and b[n - k]:
                    acc = acc + a[k] * b[n - k]
            out.append(acc)
        return TruncSeries(out)

    def __rmul__(self, other: Any) -> TruncSeries:
        return TruncSeries([other * a for a in self._coeffs])

    def __pow__(self, k: int) -> TruncSeries:
        return series_pow(self, k)

    def map(self, fn: Callable[[Any], Any]) -> TruncSeries:
        return TruncSeries([fn(c) for c in self._coeffs])

    def to_json(self) -> dict:
        if self._coeffs and isinstance(self._coeffs[0], HalfLaurent):
            return {"order": self.order, "coeffs": [c.to_json() for c in self._coeffs]}
        return {"order": self.order, "coeffs": [format_scalar(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: Any) -> TruncSeries:
        if isinstance(obj, list):
            obj = {"coeffs": obj}
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise InvalidInput("series payload must be {'order': N, 'coeffs': [...]}")
        raw = obj["coeffs"]
        if not isinstance(raw, list) or not raw:
            raise InvalidInput("series coeffs must be a non-empty list")
        if isinstance(raw[0], dict):
            cs = [HalfLaurent.from_json(c) for c in raw]
        else:
            cs = [parse_scalar(c) for c in raw]
        order = obj.get("order")
        if order is not None:
            try:
                order = int(order)
            except (TypeError, ValueError):
                raise InvalidInput(f"bad series order {order!r}") from None
        return cls(cs, order)


def parse_scalar(s: Any) -> int | Fraction:
    """Parse a decimal string (``"12"``, ``"-3/4"``) or int into an exact scalar."""
    if isinstance(s, bool):
        raise InvalidInput("booleans are not ring elements")
    if isinstance(s, int):
        return s
    if isinstance(s, Fraction):
        return s
    if isinstance(s, str):
        try:
            if "/" in s:
                f = Fraction(s.strip())
                return f.numerator if f.denominator == 1 else f
            return int(s)
        except (ValueError, ZeroDivisionError):
            pass
    raise InvalidInput(f"not an exact integer or rational: {s!r}")


def format_scalar(c: Any) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def retruncate(a: TruncSeries, order: int) -> TruncSeries:
    if order > a.order or order < 0:
        raise InvalidInput(f"cannot retruncate order {a.order} series to {order}")
    return TruncSeries(a.coeffs[: order + 1])


def series_arith(a: TruncSeries, b: TruncSeries, op: str) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise InvalidInput(f"unknown series operation {op!r}")


def series_inv(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; the constant term must be a unit."""
    c = a.coeffs
    b0 = _unit_inverse(c[0])
    out = [b0]
    for n in range(1, len(c)):
        acc = _zero_like(c[0])
        for k in range(1, n + 1):
            if c[k]:
                acc = acc + c[k] * out[n - k]
        out.append(-(b0 * acc))
    return TruncSeries(out)


def series_pow(a: TruncSeries, k: int) -> TruncSeries:
    if k < 0:
        return series_pow(series_inv(a), -k)
    result = TruncSeries.one(a.order, a.coeffs[0])
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def _as_rational(a: TruncSeries) -> list[Fraction]:
    out = []
    for c in a.coeffs:
        if isinstance(c, HalfLaurent) or not isinstance(c, (int, Fraction)):
            raise InvalidInput("exp/log are defined over rational coefficients only")
        out.append(Fraction(c))
    return out


def series_exp(a: TruncSeries) -> TruncSeries:
    """exp of a series with zero constant term, via n b_n = sum k a_k b_{n-k}."""
    c = _as_rational(a)
    if c[0] != 0:
        raise InvalidInput("exp requires constant term 0")
    b = [Fraction(1)]
    for n in range(1, len(c)):
        b.append(sum((k * c[k] * b[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    return TruncSeries(b)


def series_log(a: TruncSeries) -> TruncSeries:
    """log of a series with constant term 1, via n b_n = n a_n - sum k b_k a_{n-k}."""
    c = _as_rational(a)
    if c[0] != 1:
        raise InvalidInput("log requires constant term 1")
    b = [Fraction(0)]
    for n in range(1, len(c)):
        s = n * c[n] - sum((k * b[k] * c[n - k] for k in range(1, n)), Fraction(0))
        b.append(s / n)
    return TruncSeries(b)


def series_exp_log(a: TruncSeries, direction: str) -> TruncSeries:
    if direction == "exp":
        return series_exp(a)
    if direction == "log":
        return series_log(a)
    raise InvalidInput(f"direction must be 'exp' or 'log', got {direction!r}")


def substitute_sign(a: TruncSeries, s: int) -> TruncSeries:
    """``q -> s q`` for ``s = +-1``."""
    if s not in (1, -1):
        raise InvalidInput("sign must be +1 or -1")
    if s == 1:
        return a
    return TruncSeries([c if n % 2 == 0 else -c for n, c in enumerate(a.coeffs)])


class LaurentSeries:
    """Series ``sum_{e=offset}^{order} c_e q^e`` known on that exponent window."""

    __slots__ = ("_offset", "_coeffs")

    def __init__(self, offset: int, coeffs: Sequence[Any]):
        if not coeffs:
            raise InvalidInput("LaurentSeries needs at least one coefficient")
        self._offset = int(offset)
        self._coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, lo: int, hi: int) -> LaurentSeries:
        if hi < lo:
            raise InvalidInput(f"empty window [{lo}, {hi}]")
        return cls(lo, [Fraction(0)] * (hi - lo + 1))

    @property
    def offset(self) -> int:
        return self._offset

    @property
    def order(self) -> int:
        return self._offset + len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def coefficient(self, e: int) -> Any:
        i = e - self._offset
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    def on_window(self, lo: int, hi: int) -> LaurentSeries:
        """Restrict or zero-pad below; exponents above ``order`` are unknown."""
        if hi > self.order:
            raise InvalidInput(f"series is only known up to q^{self.order}")
        return LaurentSeries(lo, [self.coefficient(e) for e in range(lo, hi + 1)])

    def _aligned(self, other: LaurentSeries) -> tuple[int, int]:
        if not isinstance(other, LaurentSeries):
            raise InvalidInput(f"expected LaurentSeries, got {type(other).__name__}")
        if other.offset != self.offset or other.order != self.order:
            raise InvalidInput("Laurent series windows differ")
        return self.offset, self.order

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        self._aligned(other)
        return LaurentSeries(self._offset, [a + b for a, b in zip(self._coeffs, other._coeffs)])

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        self._aligned(other)
        return LaurentSeries(self._offset, [a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __rmul__(self, scalar: Any) -> LaurentSeries:
        return LaurentSeries(self._offset, [scalar * c for c in self._coeffs])

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self._offset == other._offset and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._offset, self._coeffs))

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def __repr__(self) -> str:
        return f"LaurentSeries(offset={self._offset}, coeffs={list(self._coeffs)!r})"

    def to_json(self) -> dict:
        return {"offset": self._offset, "coeffs": [format_scalar(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> LaurentSeries:
        try:
            offset = int(obj["offset"])
            coeffs = [Fraction(parse_scalar(c)) for c in obj["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed Laurent series payload: {exc}") from None
        return cls(offset, coeffs)
