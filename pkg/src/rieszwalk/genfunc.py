"""
Generating-function route to the amplitude at the origin.

Passage weights of the coin/shift walk satisfy continued-fraction
recursions. For first returns confined to the right of site ``x``::

    fhat_x(u) = u**2 (b + Delta fhat_{x+1}(u)) / (1 - c fhat_{x+1}(u))

with the coin entries ``a, b, c, d`` and ``Delta = a d - b c`` of site
``x + 1``. For the Riesz walk ``a = d = rho``, ``b = -c = xi`` so ``Delta = 1``.
The origin generating function is obtained by substituting ``u = z**2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .exceptions import PreconditionError
from .measure import RIESZ, MeasureSpec, moment
from .schur import nonzero_xi, verblunsky_parameters
from .series import EXACT, TruncatedSeries, series_mul, series_reciprocal

__all__ = [
    "PathWeightMatrices",
    "riesz_xi",
    "fhat_plus",
    "fhat_minus",
    "psi_hat_origin",
    "origin_transfer",
]


def riesz_xi(count: int, spec: MeasureSpec = RIESZ) -> list:
    """Exact ``[xi_1 .. xi_count]`` of the ``m = 4`` walk."""
    if spec.m != 4:
        raise PreconditionError("the coin/shift form exists only for the m = 4 measure")
    return nonzero_xi(verblunsky_parameters(spec, 4 * count + 4), 4)[:count]


@dataclass(frozen=True)
class PathWeightMatrices:
    """Coin entries per site, site 0 carrying the reflecting boundary.

    ``a[x], b[x], c[x], d[x]`` for ``x = 0 .. len(xi)``; site 0 uses
    ``a = d = 0, b = -c = -1``.
    """

    a: tuple
    b: tuple
    c: tuple
    d: tuple

    @classmethod
    def from_xi(cls, xi: Sequence) -> "PathWeightMatrices":
        xi = [Fraction(v) if not isinstance(v, float) else v for v in xi]
        rho = [float(np.sqrt(1 - float(v) ** 2)) for v in xi]
        return cls(
            a=(0,) + tuple(rho),
            b=(-1,) + tuple(xi),
            c=(1,) + tuple(-v for v in xi),
            d=(0,) + tuple(rho),
        )

    def delta(self, x: int):
        # for x >= 1 the exact value is 1 - xi**2 + xi**2; avoid float rho
        if x >= 1 and self.a[x] == self.d[x] and self.b[x] == -self.c[x]:
            return 1 if not isinstance(self.b[x], float) else 1.0
        return self.a[x] * self.d[x] - self.b[x] * self.c[x]

    def delta_float(self, x: int) -> float:
        return float(self.a[x]) * float(self.d[x]) - float(self.b[x]) * float(self.c[x])

    def P(self, x: int) -> np.ndarray:
        return np.array([[0, 0], [self.b[x], self.a[x]]], dtype=float)

    def Q(self, x: int) -> np.ndarray:
        return np.array([[self.d[x], self.c[x]], [0, 0]], dtype=float)

    def R(self, x: int) -> np.ndarray:
        return np.array([[0, 0], [self.d[x], self.c[x]]], dtype=float)

    def S(self, x: int) -> np.ndarray:
        return np.array([[self.b[x], self.c[x]], [0, 0]], dtype=float)


def _valuation(u: TruncatedSeries) -> int:
    for n, c in enumerate(u.coeffs):
        if c != 0:
            return n
    raise PreconditionError("variable series must be nonzero")


def fhat_plus(x: int, u, depth: int, xi: Optional[Sequence] = None):
    """Right first-return weight ``fhat_x^(+)`` truncated ``depth`` levels down.

    The level ``x + depth`` is set to zero. In series mode (``u`` a
    :class:`TruncatedSeries`) every level contributes a factor ``u**2``, so the
    result is exact through ``u**(2 * depth + 1)``; the returned series is cut
    to that certified order.

    Parameters
    ----------
    x : int
        Site index, ``x >= 0``.
    u : scalar or TruncatedSeries
        Value of (or series for) the generating variable.
    depth : int
        Number of continued-fraction levels, ``depth >= 1``.
    xi : sequence, optional
        ``[xi_1, xi_2, ...]``; defaults to the Riesz parameters.
    """
    if depth < 1:
        raise PreconditionError(f"depth must be >= 1, got {depth}")
    series_mode = isinstance(u, TruncatedSeries)
    levels = depth
    if series_mode:
        v = 2 * _valuation(u)
        certified = min(u.valid_order, v * (depth + 1) - 1)
        # deeper levels only move coefficients past the certified order
        levels = min(depth, certified // v + 1)
    if xi is None:
        xi = riesz_xi(x + levels)
    if len(xi) < x + levels:
        raise PreconditionError(f"need xi_1 .. xi_{x + levels}, got {len(xi)} values")

    if not series_mode:
        f = 0
        u2 = u * u
        for y in range(x + depth - 1, x - 1, -1):
            s = xi[y]  # xi_{y+1}
            f = u2 * (f + s) / (1 + s * f)
        return f

    u2 = series_mul(u, u)
    f = None
    for y in range(x + levels - 1, x - 1, -1):
        need = certified - v * (y - x)
        s = xi[y]  # xi_{y+1}
        if need < v:
            f = TruncatedSeries.constant(0, need, u.field)
            continue
        if f is None:
            inner = TruncatedSeries.constant(s, need - v, u.field)
        else:
            inner = series_mul(f + s, series_reciprocal(1 + f * s))
        f = _times_monomial_like(u2, v, inner)
    return f


def _times_monomial_like(w: TruncatedSeries, v: int, a: TruncatedSeries) -> TruncatedSeries:
    """``w * a`` for ``w`` of valuation ``v``; known to ``order(a) + v``."""
    n = a.valid_order
    unit = TruncatedSeries(w.coeffs[v : v + n + 1], w.field)
    prod = series_mul(unit, a)
    return TruncatedSeries((prod[0] * 0,) * v + prod.coeffs, w.field)


def fhat_minus(x: int, u, weights: PathWeightMatrices):
    """Left first-return weight ``fhat_x^(-)``, recursing up from the boundary.

    ``fhat_0^(-) = 0``; with the boundary coin this gives ``fhat_1^(-) = u**2``.
    """
    if x < 1:
        raise PreconditionError("fhat_minus is defined for x >= 1")
    f = 0 * u if not isinstance(u, TruncatedSeries) else TruncatedSeries.constant(0, u.valid_order, u.field)
    u2 = u * u
    for y in range(1, x + 1):
        c, b, delta = weights.c[y - 1], weights.b[y - 1], weights.delta(y - 1)
        if isinstance(u, TruncatedSeries):
            f = series_mul(u2, series_mul(f * delta + c, series_reciprocal(1 - f * b)))
        else:
            f = u2 * (c + delta * f) / (1 - b * f)
    return f


def psi_hat_origin(spec: MeasureSpec = RIESZ, order: int = 0, depth: Optional[int] = None) -> TruncatedSeries:
    """Series ``sum_n Psi_n^L(0) z**n`` for the walk started at ``[1, 0]`` at the origin.

    Built from the one-site resolvent at site 1 of the coin/shift walk,
    ``(1 - c_1 fhat_1^(+)) / gamma_1`` with
    ``gamma_1 = 1 - b_1 fhat_1^(-) - c_1 fhat_1^(+) - Delta_1 fhat_1^(+) fhat_1^(-)``,
    evaluated at ``u = z**2``. The default depth ``order // 2 + 2`` certifies
    every returned coefficient.
    """
    if spec.m != 4:
        raise PreconditionError("the continued-fraction route is specific to the m = 4 walk")
    if order < 0:
        raise PreconditionError(f"order must be >= 0, got {order}")
    if depth is None:
        depth = order // 2 + 2
    xi = riesz_xi(min(depth, order // 4 + 1) + 2, spec)
    weights = PathWeightMatrices.from_xi(xi)

    u = TruncatedSeries.monomial(2, order, field=EXACT)
    fp = fhat_plus(1, u, depth, xi)
    fm = fhat_minus(1, u, weights)
    b1, c1, d1 = weights.b[1], weights.c[1], weights.delta(1)
    gamma = 1 - fm * b1 - fp * c1 - series_mul(fp, fm) * d1
    return series_mul(1 - fp * c1, series_reciprocal(gamma))


def origin_transfer(n: int, spec: MeasureSpec = RIESZ):
    """Origin block of the ``n``-th operator power: ``[[mu_n, mu_{n-1}], [mu_{n+1}, mu_n]]``."""
    if n < 0:
        raise PreconditionError(f"n must be >= 0, got {n}")
    return (
        (moment(n, spec), moment(n - 1, spec)),
        (moment(n + 1, spec), moment(n, spec)),
    )
