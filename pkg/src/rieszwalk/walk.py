"""
CGMV walks on the half-line.

The one-step operator is block pentadiagonal::

    psi'(x) = P[x-1] psi(x-1) + R[x] psi(x) + Q[x+1] psi(x+1)

with 2x2 blocks built from the Verblunsky parameters. Amplitudes are stored
as a dense ``(n_sites, 2)`` complex array over ``0 .. support_end``; a walk
started at the origin occupies ``0 .. t`` at time ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .exceptions import ParityViolationError, PreconditionError
from .measure import MeasureSpec
from .schur import VerblunskySequence, verblunsky_parameters
from .series import EXACT

__all__ = [
    "WalkState",
    "CgmvBlocks",
    "build_blocks",
    "parameters_for_horizon",
    "walk_blocks",
    "initial_state",
    "step",
    "iter_states",
    "evolve",
    "probability",
    "coin_shift_step",
]

_NORM_TOL = 1e-12
_PARITY_TOL = 1e-12


@dataclass
class WalkState:
    """Amplitudes ``amps[x] = (L(x), R(x))`` at time ``t``."""

    t: int
    amps: np.ndarray

    @property
    def support_end(self) -> int:
        return len(self.amps) - 1

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps[:, 0]) ** 2 + np.abs(self.amps[:, 1]) ** 2

    def norm(self) -> float:
        return float(np.sqrt(self.probabilities().sum()))

    def parity_defect(self) -> float:
        """Largest amplitude on the sublattice that must be empty at time ``t``.

        Even ``t`` allows only L on even sites and R on odd sites; odd ``t``
        the complement.
        """
        x = np.arange(len(self.amps))
        even_site = x % 2 == 0
        if self.t % 2 == 0:
            forbidden = np.concatenate([self.amps[~even_site, 0], self.amps[even_site, 1]])
        else:
            forbidden = np.concatenate([self.amps[even_site, 0], self.amps[~even_site, 1]])
        return float(np.abs(forbidden).max(initial=0.0))


@dataclass(frozen=True)
class CgmvBlocks:
    """Block families ``P[x], R[x], Q[x]`` for ``x = 0 .. max_x``.

    ``Q[0]`` is unused and zero; ``R[0]`` is the boundary block.
    """

    P: np.ndarray
    R: np.ndarray
    Q: np.ndarray

    @property
    def max_x(self) -> int:
        return len(self.R) - 1

    @property
    def R0(self) -> np.ndarray:
        return self.R[0]

    def matrix(self, n_sites: int) -> np.ndarray:
        """Dense ``2n x 2n`` truncation of the operator over sites ``0 .. n-1``."""
        if n_sites > self.max_x + 1:
            raise PreconditionError(f"blocks cover {self.max_x + 1} sites, {n_sites} requested")
        U = np.zeros((2 * n_sites, 2 * n_sites))
        for x in range(n_sites):
            U[2 * x : 2 * x + 2, 2 * x : 2 * x + 2] = self.R[x]
            if x + 1 < n_sites:
                U[2 * x + 2 : 2 * x + 4, 2 * x : 2 * x + 2] = self.P[x]
                U[2 * x : 2 * x + 2, 2 * x + 2 : 2 * x + 4] = self.Q[x + 1]
        return U


def build_blocks(seq: VerblunskySequence, max_x: int) -> CgmvBlocks:
    """Blocks for sites ``0 .. max_x``; needs ``alpha_0 .. alpha_{2*max_x+1}``.

    A terminated sequence (``|alpha_k| = 1``) decouples the sites beyond it,
    so the missing parameters are padded with zeros.
    """
    need = 2 * max_x + 2
    a = seq.as_float()
    rho = seq.rhos.copy()
    if len(a) < need:
        if seq.terminated_at is None:
            raise PreconditionError(
                f"blocks up to x={max_x} need {need} Verblunsky parameters, got {len(a)}"
            )
        a = np.concatenate([a, np.zeros(need - len(a))])
        rho = np.concatenate([rho, np.ones(need - len(rho))])
    a, rho = a[:need], rho[:need]

    x = np.arange(max_x + 1)
    ae, ao = a[2 * x], a[2 * x + 1]  # alpha_{2x}, alpha_{2x+1}
    re, ro = rho[2 * x], rho[2 * x + 1]
    am = np.concatenate([[0.0], a[2 * x[1:] - 1]])  # alpha_{2x-1}
    rm = np.concatenate([[0.0], rho[2 * x[1:] - 1]])

    P = np.zeros((max_x + 1, 2, 2))
    P[:, 0, 0] = re * ro
    P[:, 0, 1] = -ae * ro

    R = np.zeros((max_x + 1, 2, 2))
    R[:, 0, 0] = -am * ae
    R[:, 0, 1] = -am * re
    R[:, 1, 0] = re * ao
    R[:, 1, 1] = -ae * ao
    R[0] = [[a[0], rho[0]], [rho[0] * a[1], -a[0] * a[1]]]

    Q = np.zeros((max_x + 1, 2, 2))
    Q[1:, 1, 0] = rm[1:] * ae[1:]
    Q[1:, 1, 1] = rm[1:] * re[1:]
    return CgmvBlocks(P, R, Q)


def parameters_for_horizon(T: int) -> int:
    """Verblunsky parameters needed to run ``T`` steps from the origin.

    The walk reaches site ``T`` at time ``T`` and site ``x`` uses
    ``alpha_{2x+1}``; one spare site is kept.
    """
    return 2 * (T + 1) + 2


def initial_state(alpha: complex = 1.0, beta: complex = 0.0) -> WalkState:
    """``[alpha, beta]`` at the origin; must be normalised."""
    norm2 = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm2 - 1) > _NORM_TOL:
        raise PreconditionError(f"|alpha|^2 + |beta|^2 = {norm2}, expected 1")
    return WalkState(0, np.array([[complex(alpha), complex(beta)]]))


def step(state: WalkState, blocks: CgmvBlocks) -> WalkState:
    """Apply the one-step operator once."""
    a = state.amps
    n = len(a)
    if blocks.max_x < n:
        raise PreconditionError(
            f"step from support_end={n - 1} needs blocks up to max_x={n}, have {blocks.max_x}"
        )
    out = np.zeros((n + 1, 2), dtype=complex)
    out[:n] += np.einsum("xij,xj->xi", blocks.R[:n], a)
    out[1:] += np.einsum("xij,xj->xi", blocks.P[:n], a)
    if n > 1:
        out[: n - 1] += np.einsum("xij,xj->xi", blocks.Q[1:n], a[1:])
    return WalkState(state.t + 1, out)


def iter_states(state: WalkState, blocks: CgmvBlocks, T: int) -> Iterator[WalkState]:
    """Yield the states at times ``state.t .. state.t + T``."""
    yield state
    for _ in range(T):
        state = step(state, blocks)
        yield state


def walk_blocks(spec: MeasureSpec, T: int, precision: str = EXACT) -> CgmvBlocks:
    seq = verblunsky_parameters(spec, parameters_for_horizon(T), precision)
    return build_blocks(seq, T + 1)


def evolve(
    initial: tuple = (1.0, 0.0),
    spec: MeasureSpec = MeasureSpec(4),
    T: int = 0,
    precision: str = EXACT,
    callback: Optional[Callable[[WalkState], None]] = None,
) -> Optional[list]:
    """Run moments -> Schur -> blocks -> ``T`` steps.

    Returns the list of states at times ``0 .. T``. When ``callback`` is given
    it receives each state in turn instead and nothing is stored.
    """
    if T < 0:
        raise PreconditionError(f"time horizon must be >= 0, got {T}")
    state = initial_state(*initial)
    blocks = walk_blocks(spec, T, precision)
    states = iter_states(state, blocks, T)
    if callback is None:
        return list(states)
    for s in states:
        callback(s)
    return None


def probability(state: WalkState, x: int) -> float:
    if x < 0 or x > state.support_end:
        return 0.0
    L, R = state.amps[x]
    return float(abs(L) ** 2 + abs(R) ** 2)


def coin_shift_step(state: WalkState, xi: Sequence) -> WalkState:
    """One step of the coin/shift factorisation of the Riesz-type walk.

    Valid when ``alpha_n = 0`` unless ``n = 3 (mod 4)``. Even -> odd time is a
    shift (L up, R down by one site); odd -> even time applies
    ``C_j = [[xi_j, rho_j], [rho_j, -xi_j]]`` to ``(L(2j-1), R(2j))`` giving
    ``(R(2j-1), L(2j))``, and the origin reflects ``R(0)`` into ``L(0)``
    (``xi_0 = -1``).

    Parameters
    ----------
    state : WalkState
    xi : sequence
        ``[xi_1, xi_2, ...]`` as returned by :func:`~rieszwalk.schur.nonzero_xi`.
    """
    if state.parity_defect() > _PARITY_TOL:
        raise ParityViolationError(
            f"state at t={state.t} carries {state.parity_defect():.3e} on the forbidden sublattice"
        )
    a = state.amps
    n = len(a)
    ap = np.zeros((n + 2, 2), dtype=complex)
    ap[:n] = a
    out = np.zeros((n + 1, 2), dtype=complex)
    out[0, 0] = ap[0, 1]
    if state.t % 2 == 0:
        out[1:, 0] = ap[:n, 0]
        out[:, 1] = ap[1 : n + 2, 1]
        return WalkState(state.t + 1, out)

    J = n // 2  # pairs (2j-1, 2j) with 2j <= n
    if len(xi) < J:
        raise PreconditionError(f"coin step at support_end={n - 1} needs {J} xi values, got {len(xi)}")
    xs = np.asarray([float(v) for v in xi[:J]])
    rs = np.sqrt(1.0 - xs**2)
    odd = np.arange(1, 2 * J, 2)
    left, right = ap[odd, 0], ap[odd + 1, 1]
    out[odd, 1] = xs * left + rs * right
    out[odd + 1, 0] = rs * left - xs * right
    return WalkState(state.t + 1, out)
