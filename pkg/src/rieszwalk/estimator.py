"""
scikit-learn style front ends.

:class:`CGMVWalk` fits the walk operator of an ``m``-fold measure (fitting
means running the Schur algorithm) and transforms initial spinors into
return-probability trajectories. :class:`ClosedFormReturnLaw` predicts the
same quantity from the closed form, so the two compose in comparisons and
pipelines.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import _validation as val
from .analysis import origin_probability_moments, return_prob_closed_form
from .measure import MeasureSpec
from .schur import nonzero_xi, verblunsky_parameters
from .walk import WalkState, build_blocks, iter_states, parameters_for_horizon, step

__all__ = ["CGMVWalk", "ClosedFormReturnLaw"]


class CGMVWalk(TransformerMixin, BaseEstimator):
    """Half-line CGMV walk of the ``m``-fold product measure.

    Parameters
    ----------
    m : int, default=4
        Fold parameter; 4 is the Riesz walk.
    n_steps : int, default=64
        Time horizon ``T``.
    precision : {"exact", "double"}, default="exact"
        Scalar field for the Schur algorithm.
    output : {"origin", "final"}, default="origin"
        ``"origin"``: ``transform`` returns ``mu_t(0)`` for ``t = 0 .. T``.
        ``"final"``: it returns the distribution over sites ``0 .. T`` at time ``T``.

    Attributes
    ----------
    verblunsky_ : VerblunskySequence
    blocks_ : CgmvBlocks
    xi_ : list or None
        Nonzero parameters when ``m == 4``.
    n_features_in_ : int
        Always 2: the ``(alpha, beta)`` components of the initial spinor.
    """

    def __init__(self, m=4, n_steps=64, precision="exact", output="origin"):
        self.m = m
        self.n_steps = n_steps
        self.precision = precision
        self.output = output

    def fit(self, X=None, y=None):
        m = val.check_fold(self.m)
        T = val.check_horizon(self.n_steps, "n_steps")
        val.check_precision(self.precision)
        if self.output not in ("origin", "final"):
            raise ValueError(f"output must be 'origin' or 'final', got {self.output!r}")
        if X is not None:
            val.check_initial_states(X)
        self.verblunsky_ = verblunsky_parameters(MeasureSpec(m), parameters_for_horizon(T), self.precision)
        self.blocks_ = build_blocks(self.verblunsky_, T + 1)
        self.xi_ = nonzero_xi(self.verblunsky_, 4) if m == 4 else None
        self.n_features_in_ = 2
        return self

    def _initial(self, row) -> WalkState:
        return WalkState(0, np.asarray(row, dtype=complex).reshape(1, 2))

    def trajectory(self, alpha=1.0, beta=0.0) -> list:
        """All states ``Psi_0 .. Psi_T`` for one initial spinor."""
        check_is_fitted(self)
        row = val.check_initial_states([alpha, beta])[0]
        return list(iter_states(self._initial(row), self.blocks_, self.n_steps))

    def transform(self, X):
        check_is_fitted(self)
        X = val.check_initial_states(X)
        T = self.n_steps
        # both outputs have T + 1 columns: times 0..T, or sites 0..T
        out = np.empty((len(X), T + 1))
        for i, row in enumerate(X):
            state = self._initial(row)
            if self.output == "origin":
                out[i, 0] = state.probabilities()[0]
            for t in range(1, T + 1):
                state = step(state, self.blocks_)
                if self.output == "origin":
                    out[i, t] = state.probabilities()[0]
            if self.output == "final":
                out[i] = state.probabilities()
        return out


class ClosedFormReturnLaw(BaseEstimator):
    """Return probability at the origin from moments alone.

    For ``m = 4`` the six-case law of the Riesz walk is used; for other ``m``
    the moment formula ``|a mu_t + b mu_{t-1}|^2 + |a mu_{t+1} + b mu_t|^2``.

    Parameters
    ----------
    m : int, default=4
    alpha, beta : complex
        Initial spinor at the origin.
    """

    def __init__(self, m=4, alpha=1.0, beta=0.0):
        self.m = m
        self.alpha = alpha
        self.beta = beta

    def fit(self, X=None, y=None):
        val.check_fold(self.m)
        val.check_initial_states([self.alpha, self.beta])
        self.spec_ = MeasureSpec(self.m)
        return self

    def predict(self, X):
        """``X`` holds times ``t``; returns ``mu_t(0)`` as floats."""
        check_is_fitted(self)
        t = val.check_times(X)
        if self.m == 4:
            vals = [return_prob_closed_form(int(s), self.alpha, self.beta).value for s in t]
        else:
            vals = [origin_probability_moments(int(s), self.alpha, self.beta, self.spec_) for s in t]
        return np.asarray([float(v) for v in vals])
