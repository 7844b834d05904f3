"""
Moments of the m-fold Riesz-type product measures and their analytic transforms.

The measure with density ``prod_{k>=1} (1 + cos(m**k * theta))`` has moments
that are read off arithmetically from the balanced base-``m`` expansion of the
index; the infinite product itself is never expanded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import PreconditionError
from .series import EXACT, TruncatedSeries, series_mul, series_reciprocal, series_shift_down

__all__ = [
    "MeasureSpec",
    "RIESZ",
    "SignedDigitRep",
    "signed_digits",
    "moment",
    "caratheodory_series",
    "compressed_caratheodory_series",
    "schur_series",
    "caratheodory_from_schur",
]


@dataclass(frozen=True)
class MeasureSpec:
    """The ``m``-fold product measure; ``m = 4`` is the Riesz measure."""

    m: int = 4

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int):
            raise PreconditionError(f"fold parameter must be an integer, got {self.m!r}")
        if self.m < 2:
            raise PreconditionError(f"fold parameter must satisfy m >= 2, got {self.m}")

    def moment(self, j: int) -> Fraction:
        return moment(j, self)


RIESZ = MeasureSpec(4)


@dataclass(frozen=True)
class SignedDigitRep:
    """Balanced base-``m`` digits of an integer, starting at exponent 1.

    ``digits[i]`` multiplies ``m**(i + 1)``. When ``representable`` is false
    the digit list is empty and ``p`` is 0.
    """

    value: int
    m: int
    digits: tuple[int, ...]
    representable: bool

    @property
    def p(self) -> int:
        return sum(1 for d in self.digits if d)

    @property
    def exponents(self) -> tuple[int, ...]:
        """Exponents of the nonzero digits, largest first."""
        return tuple(i + 1 for i in reversed(range(len(self.digits))) if self.digits[i])

    def reconstruct(self) -> int:
        return sum(d * self.m ** (i + 1) for i, d in enumerate(self.digits))


def signed_digits(j: int, m: int) -> SignedDigitRep:
    """Write ``j`` as a signed sum of distinct powers ``m**k``, ``k >= 1``.

    Digits are extracted from ``j / m`` in balanced base ``m`` restricted to
    ``{-1, 0, +1}``. For ``m >= 3`` such a representation is unique when it
    exists, because ``sum_{i<k} m**i < m**k / 2``.
    """
    if m < 3:
        raise PreconditionError(f"signed digits need m >= 3, got {m}")
    if j == 0:
        return SignedDigitRep(0, m, (), True)
    if j % m:
        return SignedDigitRep(j, m, (), False)
    r = j // m
    digits = []
    while r:
        d = r % m
        if d == 0:
            digits.append(0)
            r //= m
        elif d == 1:
            digits.append(1)
            r = (r - 1) // m
        elif d == m - 1:
            digits.append(-1)
            r = (r + 1) // m
        else:
            return SignedDigitRep(j, m, (), False)
    return SignedDigitRep(j, m, tuple(digits), True)


def moment(j: int, spec: MeasureSpec = RIESZ) -> Fraction:
    """The ``j``-th moment; real, so ``moment(-j) == moment(j)``."""
    j = abs(j)
    if spec.m == 2:
        return Fraction(0 if j % 2 else 1)
    if j == 0:
        return Fraction(1)
    rep = signed_digits(j, spec.m)
    if not rep.representable:
        return Fraction(0)
    return Fraction(1, 2 ** rep.p)


def caratheodory_series(spec: MeasureSpec, order: int) -> TruncatedSeries:
    """``F(z) = 1 + 2 * sum_{n>=1} mu_n z**n`` to the given order."""
    if order < 0:
        raise PreconditionError(f"order must be >= 0, got {order}")
    coeffs = [Fraction(1)] + [2 * moment(n, spec) for n in range(1, order + 1)]
    return TruncatedSeries(tuple(coeffs), EXACT)


def compressed_caratheodory_series(spec: MeasureSpec, order: int) -> TruncatedSeries:
    """``G(w)`` with ``F(z) = G(z**m)``: coefficient ``n`` is that of ``z**(m*n)``."""
    if order < 0:
        raise PreconditionError(f"order must be >= 0, got {order}")
    m = spec.m
    coeffs = [Fraction(1)] + [2 * moment(m * n, spec) for n in range(1, order + 1)]
    return TruncatedSeries(tuple(coeffs), EXACT)


def schur_series(F: TruncatedSeries) -> TruncatedSeries:
    """Schur function ``f = (1/z) (F - 1) / (F + 1)``; loses one order."""
    if F[0] != 1:
        raise PreconditionError(f"not a Caratheodory series: constant term {F[0]}")
    return series_shift_down(series_mul(F - 1, series_reciprocal(F + 1)), 1)


def caratheodory_from_schur(f: TruncatedSeries) -> TruncatedSeries:
    """Inverse of :func:`schur_series`: ``F = (1 + z f) / (1 - z f)``."""
    zero = f[0] * 0
    zf = TruncatedSeries((zero,) + f.coeffs, f.field)
    return series_mul(1 + zf, series_reciprocal(1 - zf))
