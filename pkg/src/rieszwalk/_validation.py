"""Input validation shared by the estimators and the CLI."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import PreconditionError

NORM_TOL = 1e-12


def check_fold(m) -> int:
    if isinstance(m, bool) or not isinstance(m, numbers.Integral) or m < 2:
        raise PreconditionError(f"m must be an integer >= 2, got {m!r}")
    return int(m)


def check_horizon(T, name: str = "T") -> int:
    if isinstance(T, bool) or not isinstance(T, numbers.Integral) or T < 0:
        raise PreconditionError(f"{name} must be a non-negative integer, got {T!r}")
    return int(T)


def check_precision(precision: str) -> str:
    if precision not in ("exact", "double"):
        raise PreconditionError(f"precision must be 'exact' or 'double', got {precision!r}")
    return precision


def check_initial_states(X) -> np.ndarray:
    """Coerce ``X`` to a complex ``(n_samples, 2)`` array of unit-norm spinors.

    A single pair ``(alpha, beta)`` is accepted and promoted to one row.
    """
    X = np.asarray(X, dtype=complex)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] != 2:
        raise PreconditionError(f"initial states must have shape (n_samples, 2), got {X.shape}")
    if not np.all(np.isfinite(X)):
        raise PreconditionError("initial states contain NaN or inf")
    norms = np.sum(np.abs(X) ** 2, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1) > NORM_TOL)
    if bad.size:
        raise PreconditionError(
            f"row {bad[0]} has |alpha|^2 + |beta|^2 = {norms[bad[0]]!r}, expected 1"
        )
    return X


def check_times(t) -> np.ndarray:
    t = np.asarray(t)
    if t.ndim == 0:
        t = t[None]
    if t.ndim == 2 and t.shape[1] == 1:
        t = t[:, 0]
    if t.ndim != 1 or not np.issubdtype(t.dtype, np.integer) or np.any(t < 0):
        raise PreconditionError("times must be a 1-d array of non-negative integers")
    return t.astype(np.int64)
