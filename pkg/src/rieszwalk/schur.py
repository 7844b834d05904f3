"""
Schur algorithm: Verblunsky parameters from a Schur-function series.

Two interchangeable iterations are provided.

``method="pair"`` (default)
    Tracks ``f_k = A_k / B_k`` as a numerator/denominator pair and applies
    ``A' = (A - a B) / z``, ``B' = B - conj(a) A`` with ``a = A(0) / B(0)``.
    Each step is linear in the series length.
``method="series"``
    The textbook step ``f' = (1/z) (f - a) / (1 - conj(a) f)`` with a full series
    reciprocal per step. Quadratic per step; kept as an independent check.

Both consume exactly one order of the input per extracted parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

import numpy as np

from .exceptions import NumericalBreakdownError, PreconditionError, StructureViolationError
from .measure import MeasureSpec, compressed_caratheodory_series
from .series import DOUBLE, EXACT, TruncatedSeries, series_mul, series_reciprocal, series_shift_down

__all__ = [
    "VerblunskySequence",
    "schur_algorithm",
    "verblunsky_parameters",
    "nonzero_xi",
]

_BREAKDOWN_TOL = 1e-9
_SIEVE_TOL = 1e-10


@dataclass(frozen=True)
class VerblunskySequence:
    """Verblunsky parameters ``alpha_0 .. alpha_K`` of a real symmetric measure.

    In the exact field the parameters are :class:`~fractions.Fraction` and
    ``rho_squared`` is exact; ``rhos`` is always a float materialisation.
    """

    alphas: tuple
    field: str = EXACT
    terminated_at: Optional[int] = None
    rhos: np.ndarray = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rho = [math.sqrt(max(0.0, float(r2))) for r2 in self.rho_squared]
        if self.terminated_at is not None:
            rho[self.terminated_at] = 0.0
        object.__setattr__(self, "rhos", np.asarray(rho, dtype=float))

    def __len__(self) -> int:
        return len(self.alphas)

    def __getitem__(self, k):
        return self.alphas[k]

    @property
    def rho_squared(self) -> tuple:
        return tuple(1 - a * a for a in self.alphas)

    def as_float(self) -> np.ndarray:
        return np.asarray([float(a) for a in self.alphas], dtype=float)

    def to_double(self) -> "VerblunskySequence":
        return VerblunskySequence(
            tuple(float(a) for a in self.alphas), DOUBLE, self.terminated_at
        )


def _classify(a, fieldname: str):
    """Return (alpha, terminated) after range checks."""
    mag = abs(a)
    if fieldname == EXACT:
        if mag > 1:
            raise PreconditionError(f"|alpha| = {mag} > 1: input is not a Schur function")
        return a, mag == 1
    if mag > 1 + _BREAKDOWN_TOL:
        raise NumericalBreakdownError(
            f"|alpha| = {mag!r} exceeds 1 in double precision; rerun with precision='exact'"
        )
    if abs(mag - 1) <= _BREAKDOWN_TOL:
        return math.copysign(1.0, a), True
    return a, False


def _pair_iteration(A: list, B: list, count: int, fieldname: str):
    """Run ``count`` pair-form Schur steps; returns (alphas, terminated_at)."""
    alphas = []
    for k in range(count):
        a, stop = _classify(A[0] / B[0], fieldname)
        alphas.append(a)
        if stop:
            return alphas, k
        n = len(A) - 1
        A, B = (
            [A[i + 1] - a * B[i + 1] for i in range(n)],
            [B[i] - a * A[i] for i in range(n)],
        )
        if fieldname == DOUBLE and n:
            b0 = B[0]
            A = [x / b0 for x in A]
            B = [x / b0 for x in B]
    return alphas, None


def _series_iteration(f: TruncatedSeries, count: int):
    alphas = []
    for k in range(count):
        a, stop = _classify(f[0], f.field)
        alphas.append(a)
        if stop:
            return alphas, k
        if k == count - 1:
            break
        f = series_shift_down(series_mul(f - a, series_reciprocal(1 - f * a)), 1)
    return alphas, None


def schur_algorithm(f: TruncatedSeries, count: int, method: str = "pair") -> VerblunskySequence:
    """Extract ``alpha_0 .. alpha_{count-1}`` from the Schur series ``f``.

    Parameters
    ----------
    f : TruncatedSeries
        Schur function, known to order ``N``.
    count : int
        Number of parameters; at most ``N + 1`` can be extracted.
    method : {"pair", "series"}

    Raises
    ------
    PreconditionError
        If ``f`` is not known to a high enough order.
    NumericalBreakdownError
        If a double-precision parameter leaves the closed unit interval.
    """
    if count < 0:
        raise PreconditionError(f"count must be >= 0, got {count}")
    if count > f.valid_order + 1:
        raise PreconditionError(
            f"series known to order {f.valid_order} yields at most "
            f"{f.valid_order + 1} parameters, {count} requested"
        )
    if method == "pair":
        one = Fraction(1) if f.field == EXACT else 1.0
        alphas, term = _pair_iteration(list(f.coeffs), [one] + [one * 0] * f.valid_order, count, f.field)
    elif method == "series":
        alphas, term = _series_iteration(f, count)
    else:
        raise ValueError(f"unknown method {method!r}")
    return VerblunskySequence(tuple(alphas), f.field, term)


# Longest xi prefix computed so far, per (m, field). A Schur prefix does not
# depend on how far the input was known, so shorter requests are slices.
_XI_CACHE: dict = {}


def _compressed_parameters(m: int, n_xi: int, fieldname: str):
    key = (m, fieldname)
    if key in _XI_CACHE:
        xs, term = _XI_CACHE[key]
        if term is not None:
            return (xs, term) if term < n_xi else (xs[:n_xi], None)
        if len(xs) >= n_xi:
            return xs[:n_xi], None
    G = compressed_caratheodory_series(MeasureSpec(m), n_xi + 1)
    if fieldname == DOUBLE:
        G = G.to_field(DOUBLE)
    # Schur function of G: (1/w) (G - 1) / (G + 1), held as a pair.
    A = list(G.coeffs[1:])
    B = [G[0] + 1] + list(G.coeffs[1:-1])
    xs, term = _pair_iteration(A, B, n_xi, fieldname)
    _XI_CACHE[key] = (tuple(xs), term)
    return tuple(xs), term


def verblunsky_parameters(
    spec: MeasureSpec, count: int, precision: str = EXACT
) -> VerblunskySequence:
    """Parameters ``alpha_0 .. alpha_{count-1}`` of the ``m``-fold measure.

    Since ``F(z) = G(z**m)``, the Schur function factors as
    ``f(z) = z**(m-1) g(z**m)`` with ``g`` the Schur function of ``G``. The
    iteration is run on ``g``; its parameters land at indices ``m*k - 1`` and
    every other parameter is zero.
    """
    if precision not in (EXACT, DOUBLE):
        raise ValueError(f"precision must be 'exact' or 'double', got {precision!r}")
    m = spec.m
    n_xi = count // m
    xs, term = _compressed_parameters(m, n_xi, precision)
    zero = Fraction(0) if precision == EXACT else 0.0
    alphas = [zero] * count
    for k, x in enumerate(xs, start=1):
        alphas[m * k - 1] = x
    terminated_at = None
    if term is not None:
        terminated_at = m * (term + 1) - 1
        alphas = alphas[: terminated_at + 1]
    return VerblunskySequence(tuple(alphas), precision, terminated_at)


def nonzero_xi(seq: VerblunskySequence, m: int) -> list:
    """``xi_k = alpha_{m*k - 1}`` for ``k >= 1``, checking all other entries vanish."""
    for n, a in enumerate(seq.alphas):
        if (n + 1) % m == 0:
            continue
        bad = a != 0 if seq.field == EXACT else abs(a) > _SIEVE_TOL
        if bad:
            raise StructureViolationError(
                f"alpha_{n} = {a} is nonzero but {n} is not congruent to {m - 1} mod {m}"
            )
    return [seq.alphas[n] for n in range(m - 1, len(seq.alphas), m)]
