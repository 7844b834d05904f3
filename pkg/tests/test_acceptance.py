"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``CRITERION n: PASS|FAIL`` line with the measured
figures, then asserts.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from rieszwalk import (
    RIESZ,
    MeasureSpec,
    caratheodory_series,
    check_conjecture_distribution,
    check_selfsimilarity,
    coin_shift_step,
    evolve,
    moment,
    nonzero_xi,
    nu,
    psi_hat_origin,
    return_prob_closed_form,
    return_prob_simple,
    s_sum,
    schur_algorithm,
    schur_series,
    step,
    verblunsky_parameters,
)
from rieszwalk.analysis import origin_probability_moments
from rieszwalk.walk import WalkState, initial_state, walk_blocks


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def test_criterion_01_return_law_full_horizon(report):
    origin = []
    start = time.perf_counter()
    evolve((1, 0), RIESZ, 1365, callback=lambda s: origin.append(s.probabilities()[0]))
    elapsed = time.perf_counter() - start
    closed = [return_prob_simple(t) for t in range(1366)]
    dev = max(abs(p - float(c)) for p, c in zip(origin, closed))
    zero_viol = sum(1 for p, c in zip(origin, closed) if c == 0 and not p < 1e-18)
    ok = dev <= 1e-9 and zero_viol == 0 and elapsed < 60
    report(1, ok, f"max dev {dev:.2e}, zero-pattern violations {zero_viol}, {elapsed:.1f}s")


def test_criterion_02_quarter_law_and_general_states(report, riesz_states, rng):
    quarter = max(abs(riesz_states[4**k].probabilities()[0] - 0.25) for k in range(1, 6))
    blocks = walk_blocks(RIESZ, 340)
    z = rng.normal(size=(20, 2)) + 1j * rng.normal(size=(20, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    dev = 0.0
    for a, b in z:
        state = initial_state(a, b)
        for t in range(341):
            law = float(return_prob_closed_form(t, a, b).value)
            dev = max(dev, abs(state.probabilities()[0] - law))
            state = step(state, blocks)
    ok = quarter <= 1e-9 and dev <= 1e-9
    report(2, ok, f"|mu_4^k(0) - 1/4| max {quarter:.2e}; 20 random states max dev {dev:.2e}")


def test_criterion_03_distribution_values(report, riesz_states):
    d4, d16, d64 = (riesz_states[t].probabilities() for t in (4, 16, 64))
    errs = [abs(nu(d4, 4) - 0.75), abs(nu(d16, 12) - 0.375), abs(nu(d16, 16) - 0.375)]
    quoted = {44: 0.1895, 48: 0.1854, 60: 0.1840, 64: 0.1909}
    errs64 = [abs(nu(d64, x) - v) for x, v in quoted.items()]
    ok = max(errs) <= 1e-12 and max(errs64) <= 5e-4
    report(3, ok, f"t=4,16 max err {max(errs):.2e}; t=64 max err {max(errs64):.2e}")


def test_criterion_04_distribution_at_powers(report, riesz_states):
    worst_origin = worst_leak = worst_eps = 0.0
    for n in (2, 3, 4):
        rep = check_conjecture_distribution(n, riesz_states[4**n].probabilities())
        worst_origin = max(worst_origin, abs(rep.origin_mass - 0.25))
        worst_leak = max(worst_leak, rep.leakage)
        worst_eps = max(worst_eps, rep.max_abs_eps)
    ok = worst_origin <= 1e-9 and worst_leak <= 1e-9 and worst_eps < 0.03
    report(4, ok, f"origin dev {worst_origin:.2e}, leakage {worst_leak:.2e}, max |eps| {worst_eps:.4f}")


def test_criterion_05_selfsimilarity(report, riesz_states):
    devs = {
        t: check_selfsimilarity(t, riesz_states[2 * t].probabilities(), riesz_states[8 * t].probabilities())
        for t in (1, 2, 4, 8, 16, 32, 64, 128)
    }
    worst = max(devs.values())
    report(5, worst <= 1e-9, f"max cell deviation {worst:.2e} over t in {sorted(devs)}")


def test_criterion_06_three_routes(report, riesz_states):
    series = psi_hat_origin(RIESZ, 200)
    exact_mismatch = [n for n in range(201) if series[n] != moment(n)]
    sim = max(abs(riesz_states[n].amps[0, 0] - float(moment(n))) for n in range(201))
    ok = not exact_mismatch and sim <= 1e-10
    report(6, ok, f"series/moment mismatches {len(exact_mismatch)}, simulation max dev {sim:.2e}")


def test_criterion_07_schur(report):
    f = schur_series(caratheodory_series(RIESZ, 160))
    full = schur_algorithm(f, 160)
    fast = verblunsky_parameters(RIESZ, 160)
    leading = full.alphas[:4] == (0, 0, 0, Fraction(1, 2)) and full.alphas[7] == Fraction(-1, 3)
    sieve = all(a == 0 for n, a in enumerate(full.alphas) if n % 4 != 3)
    routes = full.alphas == fast.alphas
    exact64 = verblunsky_parameters(RIESZ, 65).as_float()
    double64 = verblunsky_parameters(RIESZ, 65, "double").as_float()
    xd = float(np.abs(exact64 - double64).max())
    coeffs = (f[3], f[7], f[11], f[15]) == (Fraction(1, 2), Fraction(-1, 4), Fraction(3, 8), Fraction(3, 16))
    ok = leading and sieve and routes and xd <= 1e-12 and coeffs
    report(
        7,
        ok,
        f"leading {leading}, sieve {sieve}, direct == compressed {routes}, "
        f"exact vs double {xd:.2e}, f coefficients {coeffs}",
    )


def test_criterion_08_structure(report, riesz_states, riesz_states_beta):
    norm = parity = 0.0
    speed_ok = True
    # [0, 1] at the origin becomes [1, 0] after one step, so its sublattice is shifted by one
    for states, lag in ((riesz_states, 0), (riesz_states_beta, 1)):
        for s in states:
            norm = max(norm, abs(s.norm() - 1))
            parity = max(parity, WalkState(s.t + lag, s.amps).parity_defect())
            speed_ok &= s.support_end <= s.t + 1
    xi = nonzero_xi(verblunsky_parameters(RIESZ, 4 * 200), 4)
    fact = 0.0
    s = initial_state(1, 0)
    for t in range(1, 257):
        s = coin_shift_step(s, xi)
        ref = riesz_states[t].amps
        n = min(len(s.amps), len(ref))
        fact = max(fact, float(np.abs(s.amps[:n] - ref[:n]).max()))
        fact = max(fact, float(np.abs(s.amps[n:]).max(initial=0.0)), float(np.abs(ref[n:]).max(initial=0.0)))
    ok = norm <= 1e-12 and parity <= 1e-12 and speed_ok and fact <= 1e-12
    report(8, ok, f"norm dev {norm:.2e}, parity defect {parity:.2e}, finite speed {speed_ok}, factorized dev {fact:.2e}")


def test_criterion_09_generalization(report, rng):
    trivial = evolve((1, 0), MeasureSpec(2), 100)
    d2 = max(abs(s.probabilities()[0] - 1) for s in trivial)
    z = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    starts = [(1, 0), (0, 1)] + [tuple(r) for r in z]
    eq9 = quarter = 0.0
    for m in (3, 5):
        spec = MeasureSpec(m)
        for a, b in starts:
            states = evolve((a, b), spec, 200)
            for s in states:
                eq9 = max(eq9, abs(s.probabilities()[0] - float(origin_probability_moments(s.t, a, b, spec))))
            if (a, b) == (1, 0):
                quarter = max(quarter, max(abs(states[m**k].probabilities()[0] - 0.25) for k in (1, 2, 3)))
    ok = d2 <= 1e-12 and eq9 <= 1e-9 and quarter <= 1e-9
    report(9, ok, f"m=2 dev {d2:.2e}; m=3,5 moment-formula dev {eq9:.2e}; mu_m^k(0) dev {quarter:.2e}")


def _window(centre, half):
    return [return_prob_simple(centre + j) for j in range(-half, half + 1)]


def test_criterion_10_window_selfsimilarity(report):
    same = quarter = True
    for k in (2, 3):
        half = s_sum(k - 1)
        base = _window(4**k, half)
        same &= _window(4 ** (k + 1), half) == base
        for sign in (1, -1):
            side = _window(4 ** (k + 1) + sign * 4**k, half)
            quarter &= side == [v / 4 for v in base]
    # The side windows are one quarter of the central one; see the strict xfail below.
    report(10, same and quarter, f"windows at 4^k and 4^(k+1) identical {same}; side windows = base / 4 {quarter}")


@pytest.mark.xfail(strict=True, reason="side windows scale by 1/4, so the squared relation is false")
def test_criterion_10_literal_square_reading():
    for k in (2, 3):
        half = s_sum(k - 1)
        base = _window(4**k, half)
        for sign in (1, -1):
            side = _window(4 ** (k + 1) + sign * 4**k, half)
            assert side == [v * v for v in base] or [v * v for v in side] == base
