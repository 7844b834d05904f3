"""
Truncated formal power series in one variable.

A :class:`TruncatedSeries` stores the coefficients ``c_0 .. c_N`` of a power
series together with its valid order ``N``: coefficients of ``z^n`` for
``n > N`` are *unknown*, not zero. Every operation returns the order to which
its result is actually determined, so errors from truncation can never leak
into reported coefficients.

Two scalar fields are supported behind the same interface:

- ``"exact"``: :class:`fractions.Fraction` coefficients (reference path)
- ``"double"``: Python floats (fast path)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable

from .exceptions import FieldMismatchError, NonInvertibleSeriesError, NotDivisibleError

__all__ = [
    "EXACT",
    "DOUBLE",
    "TruncatedSeries",
    "series_mul",
    "series_reciprocal",
    "series_shift_down",
    "series_compose_monomial",
]

EXACT = "exact"
DOUBLE = "double"

# Tolerances for the double field.
_RECIPROCAL_TOL = 1e-14
_SHIFT_TOL = 1e-12


def _coerce(value, field: str):
    if field == EXACT:
        if isinstance(value, float):
            raise FieldMismatchError(f"float {value!r} cannot enter an exact series")
        return Fraction(value)
    return float(value)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series known up to (and including) ``z**valid_order``.

    Parameters
    ----------
    coeffs : tuple
        Coefficient of ``z**n`` at index ``n``.
    field : {"exact", "double"}
        Scalar field tag.
    """

    coeffs: tuple
    field: str = EXACT

    def __post_init__(self):
        if self.field not in (EXACT, DOUBLE):
            raise ValueError(f"unknown field {self.field!r}")
        if len(self.coeffs) == 0:
            raise ValueError("a series needs at least its constant term")
        object.__setattr__(
            self, "coeffs", tuple(_coerce(c, self.field) for c in self.coeffs)
        )

    # -- construction -----------------------------------------------------
    @classmethod
    def from_coeffs(
        cls, coeffs: Iterable, order: int | None = None, field: str = EXACT
    ) -> "TruncatedSeries":
        """Build a series, zero-padding or cutting ``coeffs`` to ``order``."""
        coeffs = list(coeffs)
        if order is not None:
            coeffs = (coeffs + [0] * (order + 1 - len(coeffs)))[: order + 1]
        return cls(tuple(coeffs), field)

    @classmethod
    def constant(cls, c, order: int, field: str = EXACT) -> "TruncatedSeries":
        return cls.from_coeffs([c], order, field)

    @classmethod
    def monomial(cls, n: int, order: int, c=1, field: str = EXACT) -> "TruncatedSeries":
        return cls.from_coeffs([0] * n + [c], order, field)

    # -- basic accessors ---------------------------------------------------
    @property
    def valid_order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.valid_order:
            raise ValueError(
                f"cannot extend a series known to order {self.valid_order} to {order}"
            )
        return TruncatedSeries(self.coeffs[: order + 1], self.field)

    def to_field(self, field: str) -> "TruncatedSeries":
        if field == self.field:
            return self
        return TruncatedSeries(tuple(float(c) if field == DOUBLE else c for c in self.coeffs), field)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return f"TruncatedSeries([{terms}{more}], order={self.valid_order}, field={self.field!r})"

    # -- arithmetic ----------------------------------------------------------
    def _check_field(self, other: "TruncatedSeries") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"cannot combine {self.field} and {other.field} series")

    def _scalar(self, c):
        if isinstance(c, TruncatedSeries):
            return None
        if self.field == EXACT and not isinstance(c, Rational):
            raise FieldMismatchError(f"scalar {c!r} is not exact")
        return _coerce(c, self.field)

    def __add__(self, other):
        c = self._scalar(other)
        if c is not None:
            return TruncatedSeries((self.coeffs[0] + c,) + self.coeffs[1:], self.field)
        self._check_field(other)
        n = min(len(self), len(other))
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])), self.field)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-a for a in self.coeffs), self.field)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._scalar(other)
        if c is not None:
            return TruncatedSeries(tuple(a * c for a in self.coeffs), self.field)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, series_reciprocal(other))
        c = self._scalar(other)
        return TruncatedSeries(tuple(a / c for a in self.coeffs), self.field)

    def __rtruediv__(self, other):
        return series_reciprocal(self) * other


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller of the two valid orders."""
    a._check_field(b)
    n = min(a.valid_order, b.valid_order)
    ac, bc = a.coeffs, b.coeffs
    zero = Fraction(0) if a.field == EXACT else 0.0
    out = []
    for k in range(n + 1):
        s = zero
        for i in range(k + 1):
            ai = ac[i]
            if ai:
                s += ai * bc[k - i]
        out.append(s)
    return TruncatedSeries(tuple(out), a.field)


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse ``1/a`` to the valid order of ``a``."""
    a0 = a.coeffs[0]
    if a.field == EXACT:
        singular = a0 == 0
    else:
        singular = abs(a0) <= _RECIPROCAL_TOL
    if singular:
        raise NonInvertibleSeriesError(f"non-invertible series: constant term {a0}")
    ac = a.coeffs
    b = [1 / a0]
    for n in range(1, len(ac)):
        s = sum(ac[k] * b[n - k] for k in range(1, n + 1) if ac[k])
        b.append(-s / a0)
    return TruncatedSeries(tuple(b), a.field)


def series_shift_down(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """Divide by ``z**k``; the low coefficients must vanish."""
    if k < 1:
        raise ValueError(f"shift must be >= 1, got {k}")
    if k > a.valid_order:
        raise NotDivisibleError(
            f"series known to order {a.valid_order} has nothing left after dividing by z^{k}"
        )
    low = a.coeffs[:k]
    if a.field == EXACT:
        bad = [i for i, c in enumerate(low) if c != 0]
    else:
        bad = [i for i, c in enumerate(low) if abs(c) >= _SHIFT_TOL]
    if bad:
        raise NotDivisibleError(
            f"not divisible by z^{k}: coefficient of z^{bad[0]} is {low[bad[0]]}"
        )
    return TruncatedSeries(a.coeffs[k:], a.field)


def series_compose_monomial(a: TruncatedSeries, m: int) -> TruncatedSeries:
    """Substitute ``z -> z**m``.

    The result is known to order ``m * N + m - 1``: the first unknown input
    coefficient lands at ``z**(m * (N + 1))``.
    """
    if m < 1:
        raise ValueError(f"monomial power must be >= 1, got {m}")
    zero = Fraction(0) if a.field == EXACT else 0.0
    out = [zero] * (m * a.valid_order + m)
    for i, c in enumerate(a.coeffs):
        out[m * i] = c
    return TruncatedSeries(tuple(out), a.field)

