"""Quantum walks on the half-line driven by Riesz-type singular measures."""

from .analysis import (
    check_conjecture_distribution,
    check_selfsimilarity,
    limit_histogram,
    localization_witness,
    nu,
    origin_amplitude_moments,
    return_prob_closed_form,
    return_prob_simple,
    s_sum,
)
from .estimator import CGMVWalk, ClosedFormReturnLaw
from .genfunc import fhat_plus, origin_transfer, psi_hat_origin
from .measure import RIESZ, MeasureSpec, SignedDigitRep, caratheodory_series, moment, schur_series, signed_digits
from .schur import VerblunskySequence, nonzero_xi, schur_algorithm, verblunsky_parameters
from .series import TruncatedSeries
from .walk import CgmvBlocks, WalkState, build_blocks, coin_shift_step, evolve, probability, step

__version__ = "0.1.0"

__all__ = [
    "RIESZ",
    "MeasureSpec",
    "SignedDigitRep",
    "TruncatedSeries",
    "VerblunskySequence",
    "WalkState",
    "CgmvBlocks",
    "CGMVWalk",
    "ClosedFormReturnLaw",
    "signed_digits",
    "moment",
    "caratheodory_series",
    "schur_series",
    "schur_algorithm",
    "verblunsky_parameters",
    "nonzero_xi",
    "build_blocks",
    "step",
    "evolve",
    "probability",
    "coin_shift_step",
    "fhat_plus",
    "psi_hat_origin",
    "origin_transfer",
    "return_prob_closed_form",
    "return_prob_simple",
    "origin_amplitude_moments",
    "localization_witness",
    "nu",
    "s_sum",
    "check_conjecture_distribution",
    "check_selfsimilarity",
    "limit_histogram",
]
