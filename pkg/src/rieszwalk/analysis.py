"""
Closed-form return laws and numerical evidence for the self-similarity conjectures.

Checkers here *measure*; they never decide. Each returns the deviations it
observed and leaves thresholds to the caller.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .exceptions import PreconditionError
from .measure import RIESZ, MeasureSpec, moment, signed_digits

__all__ = [
    "ReturnLaw",
    "ScaledIntervalPartition",
    "return_prob_closed_form",
    "return_prob_simple",
    "origin_amplitude_moments",
    "origin_probability_moments",
    "localization_witness",
    "nu",
    "s_sum",
    "support_set_K",
    "support_set_Ktilde",
    "cantor_R",
    "quarter_M",
    "ConjectureDistributionReport",
    "check_conjecture_distribution",
    "check_selfsimilarity",
    "LimitHistogram",
    "limit_histogram",
]

_NORM_TOL = 1e-12


# ---------------------------------------------------------------------------
# return probability at the origin
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReturnLaw:
    """Closed-form return probability at time ``t`` and the case that produced it.

    ``branch`` is one of ``"t=0"``, ``"t=1"``, ``"rep-1"`` (``t + 1``
    representable), ``"rep"`` (``t`` representable), ``"rep+1"`` (``t - 1``
    representable) or ``"zero"``. ``p`` is the nonzero-digit count of the
    representable offset, or ``None``.
    """

    t: int
    value: object
    branch: str
    p: int | None = None


def _abs2(z):
    if isinstance(z, Rational):
        return Fraction(z) ** 2
    return abs(z) ** 2


def _check_normalised(alpha, beta) -> None:
    total = _abs2(alpha) + _abs2(beta)
    if isinstance(total, Fraction):
        ok = total == 1
    else:
        ok = abs(total - 1) <= _NORM_TOL
    if not ok:
        raise PreconditionError(f"|alpha|^2 + |beta|^2 = {total}, expected 1")


def _representable_p(n: int, m: int = 4):
    """Digit count ``p >= 1`` if ``n > 0`` is a signed sum of powers ``m**k``."""
    if n <= 0:
        return None
    rep = signed_digits(n, m)
    return rep.p if rep.representable else None


def return_prob_closed_form(t: int, alpha=1, beta=0) -> ReturnLaw:
    """Return probability of the Riesz walk started at ``[alpha, beta]`` at the origin.

    Exact (a :class:`~fractions.Fraction`) when ``alpha`` and ``beta`` are
    rational, a float otherwise.
    """
    if t < 0:
        raise PreconditionError(f"t must be >= 0, got {t}")
    _check_normalised(alpha, beta)
    if t == 0:
        return ReturnLaw(0, Fraction(1), "t=0")
    if t == 1:
        return ReturnLaw(1, _abs2(beta), "t=1")
    # representable times are multiples of 4, so at most one offset fires
    for offset, branch, weight in ((1, "rep-1", _abs2(alpha)), (0, "rep", 1), (-1, "rep+1", _abs2(beta))):
        p = _representable_p(t + offset)
        if p is not None:
            return ReturnLaw(t, weight * Fraction(1, 4**p), branch, p)
    return ReturnLaw(t, Fraction(0), "zero")


def return_prob_simple(t: int) -> Fraction:
    """Return probability for the initial state ``[1, 0]``."""
    if t < 0:
        raise PreconditionError(f"t must be >= 0, got {t}")
    if t == 0:
        return Fraction(1)
    for delta in (0, 1):
        p = _representable_p(t + delta)
        if p is not None:
            return Fraction(1, 4**p)
    return Fraction(0)


def origin_amplitude_moments(n: int, alpha=1, beta=0, spec: MeasureSpec = RIESZ):
    """``Psi_n(0) = (alpha mu_n + beta mu_{n-1}, alpha mu_{n+1} + beta mu_n)``."""
    if n < 0:
        raise PreconditionError(f"n must be >= 0, got {n}")
    mu = lambda j: moment(j, spec)  # noqa: E731
    return (alpha * mu(n) + beta * mu(n - 1), alpha * mu(n + 1) + beta * mu(n))


def origin_probability_moments(n: int, alpha=1, beta=0, spec: MeasureSpec = RIESZ):
    L, R = origin_amplitude_moments(n, alpha, beta, spec)
    return _abs2(L) + _abs2(R)


def localization_witness(spec: MeasureSpec, k_max: int) -> Fraction:
    """``min_{1<=k<=k_max} mu_{m**k}(0)`` from the moment formula."""
    if spec.m < 3:
        raise PreconditionError("m = 2 gives the trivial walk; the witness needs m >= 3")
    if k_max < 1:
        raise PreconditionError(f"k_max must be >= 1, got {k_max}")
    return min(origin_probability_moments(spec.m**k, 1, 0, spec) for k in range(1, k_max + 1))


def s_sum(k: int) -> int:
    """``4 + 16 + ... + 4**k``."""
    if k < 0:
        raise PreconditionError(f"k must be >= 0, got {k}")
    return (4 ** (k + 1) - 4) // 3


# ---------------------------------------------------------------------------
# coarse-graining and point sets
# ---------------------------------------------------------------------------

def nu(dist: Sequence[float], x: int) -> float:
    """``mu_t(x - 1) + mu_t(x)`` for a probability row ``dist``."""
    if x < 1:
        raise PreconditionError(f"nu is defined for x >= 1, got {x}")
    get = lambda y: dist[y] if y < len(dist) else 0.0  # noqa: E731
    return get(x - 1) + get(x)


def _binary_tuples(n: int):
    return itertools.product((0, 1), repeat=n)


def support_set_K(n: int) -> set:
    """``{4**n - sum_{i=1}^{n-1} 4**(n-i) k_i : k_i in {0, 1}}``."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    return {4**n - sum(4 ** (n - i) * k for i, k in enumerate(ks, 1)) for ks in _binary_tuples(n - 1)}


def support_set_Ktilde(n: int) -> set:
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    return {1 - sum(Fraction(k, 4**i) for i, k in enumerate(ks, 1)) for ks in _binary_tuples(n - 1)}


def cantor_R(n: int) -> set:
    """Right endpoints of the ``2**n`` intervals of the ``n``-th Cantor stage."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    return {1 - 2 * sum(Fraction(k, 3**i) for i, k in enumerate(ks, 1)) for ks in _binary_tuples(n)}


def quarter_M(n: int) -> set:
    """Right endpoints when each interval is quartered and the middle two removed."""
    if n < 0:
        raise PreconditionError(f"n must be >= 0, got {n}")
    return {1 - 3 * sum(Fraction(k, 4**i) for i, k in enumerate(ks, 1)) for ks in _binary_tuples(n)}


@dataclass(frozen=True)
class ScaledIntervalPartition:
    """Cells ``{0}`` and ``((k-1)/n, k/n]`` for ``k = 1 .. n``."""

    n: int

    def cell_of(self, r: Fraction) -> int:
        if r == 0:
            return 0
        if not 0 < r <= 1:
            raise ValueError(f"{r} lies outside [0, 1]")
        k = -((-r * self.n) // 1)  # ceil
        return int(k)


# ---------------------------------------------------------------------------
# conjecture checkers
# ---------------------------------------------------------------------------

@dataclass
class ConjectureDistributionReport:
    n: int
    origin_mass: float
    eps: dict = field(default_factory=dict)
    max_abs_eps: float = 0.0
    leakage: float = 0.0
    exact_zero_eps: list = field(default_factory=list)


def check_conjecture_distribution(n: int, dist: Sequence[float]) -> ConjectureDistributionReport:
    """Relative deviations of ``nu_{4**n}`` on ``K_n`` from ``3 / (4 * 2**(n-1))``.

    ``leakage`` is the largest single-site mass outside ``{0} u K_n u (K_n - 1)``.
    """
    dist = np.asarray(dist, dtype=float)
    K = sorted(support_set_K(n))
    nominal = 0.75 / 2 ** (n - 1)
    eps = {x: nu(dist, x) / nominal - 1 for x in K}
    allowed = {0} | set(K) | {x - 1 for x in K}
    outside = [dist[y] for y in range(len(dist)) if y not in allowed]
    return ConjectureDistributionReport(
        n=n,
        origin_mass=float(dist[0]),
        eps=eps,
        max_abs_eps=max(abs(e) for e in eps.values()),
        leakage=float(max(outside, default=0.0)),
        exact_zero_eps=[x for x, e in eps.items() if e == 0],
    )


def _padded(dist, length: int, time: int) -> np.ndarray:
    dist = np.asarray(dist, dtype=float)
    if len(dist) not in (time + 1, time + 2):
        raise PreconditionError(
            f"distribution at time {time} must cover sites 0..{time} (or {time + 1}), got {len(dist)} entries"
        )
    out = np.zeros(length)
    out[: len(dist)] = dist
    return out


def check_selfsimilarity(t: int, dist2t: Sequence[float], dist8t: Sequence[float]) -> float:
    """Largest cell-mass difference between ``X_{2t}/2t`` and ``X_{8t}/8t``.

    Cell ``k`` of ``T(t)`` collects sites ``2k-1, 2k`` at time ``2t`` and
    sites ``8k-7 .. 8k`` at time ``8t``; cell 0 is the origin.
    """
    if t < 1:
        raise PreconditionError(f"t must be >= 1, got {t}")
    a = _padded(dist2t, 2 * t + 2, 2 * t)
    b = _padded(dist8t, 8 * t + 2, 8 * t)
    dev = abs(a[0] - b[0])
    cells_a = a[1 : 2 * t + 1].reshape(t, 2).sum(axis=1)
    cells_b = b[1 : 8 * t + 1].reshape(t, 8).sum(axis=1)
    return float(max(dev, np.abs(cells_a - cells_b).max(initial=0.0)))


@dataclass
class LimitHistogram:
    """Rescaled distribution at time ``4**n``.

    ``points`` lists ``(0, mu(0))`` then ``(x / 4**n, nu(x))`` for ``x`` in ``K_n``.
    """

    n: int
    points: list
    lower_bound: float
    min_nonorigin_position: float
    max_distance_to_Ktilde: float

    @property
    def support_in_range(self) -> bool:
        return self.min_nonorigin_position >= self.lower_bound

    @property
    def converges_to_Ktilde(self) -> bool:
        return self.max_distance_to_Ktilde <= 4.0 ** (1 - self.n)


def limit_histogram(n: int, dist: Sequence[float], tol: float = 1e-9) -> LimitHistogram:
    dist = np.asarray(dist, dtype=float)
    scale = 4**n
    points = [(0.0, float(dist[0]))]
    points += [(x / scale, nu(dist, x)) for x in sorted(support_set_K(n))]
    occupied = [y for y in range(1, len(dist)) if dist[y] > tol]
    kt = np.array(sorted(float(v) for v in support_set_Ktilde(n)))
    positions = np.array(occupied, dtype=float) / scale
    dist_to_kt = np.abs(positions[:, None] - kt[None, :]).min(axis=1) if len(positions) else np.zeros(0)
    return LimitHistogram(
        n=n,
        points=points,
        lower_bound=2 / 3 - 4.0 ** (1 - n),
        min_nonorigin_position=float(positions.min(initial=1.0)),
        max_distance_to_Ktilde=float(dist_to_kt.max(initial=0.0)),
    )
