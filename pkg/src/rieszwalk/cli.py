"""
Command line front end: ``walk <subcommand> [options]``.

Every subcommand emits records as CSV (default) or as a JSON envelope
``{"config": ..., "records": [...], "checks": [...]}``. Exact rationals are
written as ``p/q`` strings and floats with 17 significant digits, so output
is byte-for-byte reproducible.

Exit codes: 0 success, 1 usage or configuration error, 2 numerical breakdown.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import analysis
from ._validation import NORM_TOL, check_fold, check_horizon
from .exceptions import NumericalBreakdownError, RieszWalkError
from .genfunc import psi_hat_origin
from .measure import MeasureSpec, moment
from .schur import verblunsky_parameters
from .walk import initial_state, iter_states, walk_blocks

EXIT_OK, EXIT_USAGE, EXIT_BREAKDOWN = 0, 1, 2

CONJECTURE_DIST_EPS = 0.03
EXACT_TOL = 1e-9
SELFSIM_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    m: int = 4
    T: Optional[int] = None
    n: Optional[int] = None
    alpha_re: float = 1.0
    alpha_im: float = 0.0
    beta_re: float = 0.0
    beta_im: float = 0.0
    precision: str = "exact"
    output: str = "csv"
    depth: Optional[int] = None
    max: Optional[int] = None
    count: Optional[int] = None
    order: Optional[int] = None
    at: Optional[str] = None
    upto: Optional[int] = None
    check: Optional[str] = None

    @property
    def alpha(self) -> complex:
        return complex(self.alpha_re, self.alpha_im)

    @property
    def beta(self) -> complex:
        return complex(self.beta_re, self.beta_im)

    def validate(self) -> "RunConfig":
        check_fold(self.m)
        for name in ("T", "n", "depth", "max", "count", "order", "upto"):
            value = getattr(self, name)
            if value is not None:
                check_horizon(value, name)
        norm2 = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm2 - 1) > NORM_TOL:
            raise UsageError(f"|alpha|^2 + |beta|^2 = {norm2!r}, expected 1 within {NORM_TOL}")
        return self


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return v


def _initial(cfg: RunConfig):
    a, b = cfg.alpha, cfg.beta
    if a.imag or b.imag:
        return a, b
    # integer-valued components stay exact so closed forms print as p/q
    return tuple(int(v.real) if v.real.is_integer() else v.real for v in (a, b))


def _closed_form(cfg: RunConfig, t: int):
    a, b = _initial(cfg)
    if cfg.m == 4:
        return analysis.return_prob_closed_form(t, a, b).value
    return analysis.origin_probability_moments(t, a, b, MeasureSpec(cfg.m))


def _states(cfg: RunConfig, T: int):
    blocks = walk_blocks(MeasureSpec(cfg.m), T, cfg.precision)
    return iter_states(initial_state(cfg.alpha, cfg.beta), blocks, T)


# -- subcommands --------------------------------------------------------------

def cmd_moments(cfg: RunConfig):
    n = 64 if cfg.max is None else cfg.max
    spec = MeasureSpec(cfg.m)
    return [{"j": j, "mu": moment(j, spec)} for j in range(n + 1)], []


def cmd_verblunsky(cfg: RunConfig):
    count = 64 if cfg.count is None else cfg.count
    seq = verblunsky_parameters(MeasureSpec(cfg.m), count, cfg.precision)
    return [{"k": k, "alpha_k": a} for k, a in enumerate(seq.alphas)], []


def cmd_evolve(cfg: RunConfig):
    T = 16 if cfg.T is None else cfg.T
    *_, last = _states(cfg, T)
    rows = []
    for x, (L, R) in enumerate(last.amps):
        rows.append({"t": last.t, "x": x, "L_re": L.real, "L_im": L.imag, "R_re": R.real, "R_im": R.imag})
    return rows, []


def _distribution_times(cfg: RunConfig) -> list:
    if cfg.at:
        try:
            times = sorted({int(s) for s in cfg.at.split(",") if s.strip()})
        except ValueError:
            raise UsageError(f"--at expects comma separated integers, got {cfg.at!r}")
        if any(t < 0 for t in times):
            raise UsageError("--at times must be non-negative")
        return times
    if cfg.upto is not None:
        return list(range(cfg.upto + 1))
    return [16 if cfg.T is None else cfg.T]


def cmd_distribution(cfg: RunConfig):
    times = _distribution_times(cfg)
    wanted = set(times)
    rows, checks = [], []
    for state in _states(cfg, max(times)):
        if state.t not in wanted:
            continue
        pL = np.abs(state.amps[:, 0]) ** 2
        pR = np.abs(state.amps[:, 1]) ** 2
        for x in range(len(pL)):
            rows.append({"t": state.t, "x": x, "prob_L": pL[x], "prob_R": pR[x], "prob": pL[x] + pR[x]})
        total = float((pL + pR).sum())
        checks.append(_check(f"norm t={state.t}", abs(total - 1), 1e-9))
    return rows, checks


def cmd_return_prob(cfg: RunConfig):
    T = 64 if cfg.T is None else cfg.T
    rows = []
    for state in _states(cfg, T):
        p = float(state.probabilities()[0])
        cf = _closed_form(cfg, state.t)
        rows.append({"t": state.t, "prob": p, "closed_form": cf, "abs_diff": abs(p - float(cf))})
    worst = max(r["abs_diff"] for r in rows)
    return rows, [_check("return-prob vs closed form", worst, EXACT_TOL)]


def cmd_genfunc_origin(cfg: RunConfig):
    order = 64 if cfg.order is None else cfg.order
    series = psi_hat_origin(MeasureSpec(cfg.m), order, cfg.depth)
    rows = [{"n": k, "coeff": c, "moment": moment(k)} for k, c in enumerate(series.coeffs)]
    mismatches = sum(r["coeff"] != r["moment"] for r in rows)
    return rows, [_check("coefficients equal moments", float(mismatches), 0.0)]


def cmd_sets(cfg: RunConfig):
    n = 3 if cfg.n is None else cfg.n
    if n < 1:
        raise UsageError("--n must be >= 1 for sets")
    rows = []
    for name, values in (
        ("K", analysis.support_set_K(n)),
        ("Ktilde", analysis.support_set_Ktilde(n)),
        ("R", analysis.cantor_R(n)),
        ("M", analysis.quarter_M(n)),
    ):
        rows += [{"set": name, "n": n, "value": Fraction(v)} for v in sorted(values)]
    identity = {Fraction(1, 3) * v + Fraction(2, 3) for v in analysis.quarter_M(n - 1)} == analysis.support_set_Ktilde(n)
    return rows, [_check("(1/3) M_{n-1} + 2/3 == Ktilde_n", 0.0 if identity else 1.0, 0.0)]


def _check(name: str, measured: float, threshold: float) -> dict:
    return {"name": name, "measured": float(measured), "threshold": threshold, "pass": bool(measured <= threshold)}


def _check_theorem(cfg: RunConfig):
    T = 1365 if cfg.T is None else cfg.T
    worst, zero_bad, rows = 0.0, 0, []
    for state in _states(cfg, T):
        p = float(state.probabilities()[0])
        cf = _closed_form(cfg, state.t)
        worst = max(worst, abs(p - float(cf)))
        if cf == 0 and p >= 1e-18:
            zero_bad += 1
    rows.append({"T": T, "max_abs_diff": worst, "zero_pattern_violations": zero_bad})
    return rows, [_check("theorem max |diff|", worst, EXACT_TOL), _check("zero pattern violations", zero_bad, 0)]


def _check_conjecture_dist(cfg: RunConfig):
    ns = [cfg.n] if cfg.n is not None else [2, 3, 4]
    rows, checks = [], []
    for n in ns:
        if n < 1:
            raise UsageError("--n must be >= 1")
        *_, last = _states(cfg, 4**n)
        rep = analysis.check_conjecture_distribution(n, last.probabilities())
        for x, e in sorted(rep.eps.items()):
            rows.append({"n": n, "x": x, "eps": e})
        checks += [
            _check(f"n={n} origin mass - 1/4", abs(rep.origin_mass - 0.25), EXACT_TOL),
            _check(f"n={n} leakage", rep.leakage, EXACT_TOL),
            _check(f"n={n} max |eps|", rep.max_abs_eps, CONJECTURE_DIST_EPS),
        ]
    return rows, checks


def _check_conjecture_selfsim(cfg: RunConfig):
    t_max = 128 if cfg.T is None else cfg.T
    ts = [1 << k for k in range(t_max.bit_length()) if (1 << k) <= t_max]
    rows: list = []
    if not ts:
        return rows, []
    history = {s.t: s.probabilities() for s in _states(cfg, 8 * ts[-1]) if s.t in {2 * t for t in ts} | {8 * t for t in ts}}
    checks = []
    for t in ts:
        dev = analysis.check_selfsimilarity(t, history[2 * t], history[8 * t])
        rows.append({"t": t, "max_cell_deviation": dev})
        checks.append(_check(f"t={t} cell deviation", dev, SELFSIM_TOL))
    return rows, checks


def _check_conjecture_limit(cfg: RunConfig):
    ns = [cfg.n] if cfg.n is not None else [2, 3, 4]
    rows, checks = [], []
    for n in ns:
        *_, last = _states(cfg, 4**n)
        hist = analysis.limit_histogram(n, last.probabilities())
        rows += [{"n": n, "position": pos, "mass": mass} for pos, mass in hist.points]
        checks.append(_check(f"n={n} support below lower bound", max(0.0, hist.lower_bound - hist.min_nonorigin_position), 0.0))
        checks.append(_check(f"n={n} distance to Ktilde", hist.max_distance_to_Ktilde, 4.0 ** (1 - n)))
    return rows, checks


CHECKS = {
    "theorem": _check_theorem,
    "conjecture-dist": _check_conjecture_dist,
    "conjecture-selfsim": _check_conjecture_selfsim,
    "conjecture-limit": _check_conjecture_limit,
}


def cmd_check(cfg: RunConfig):
    return CHECKS[cfg.check](cfg)


COMMANDS = {
    "moments": cmd_moments,
    "verblunsky": cmd_verblunsky,
    "evolve": cmd_evolve,
    "distribution": cmd_distribution,
    "return-prob": cmd_return_prob,
    "genfunc-origin": cmd_genfunc_origin,
    "sets": cmd_sets,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--m", type=int, default=4, help="fold parameter (4 = Riesz)")
    common.add_argument("--T", type=int, help="time horizon")
    common.add_argument("--n", type=int, help="resolution / power of 4")
    common.add_argument("--alpha-re", type=float, default=1.0)
    common.add_argument("--alpha-im", type=float, default=0.0)
    common.add_argument("--beta-re", type=float, default=0.0)
    common.add_argument("--beta-im", type=float, default=0.0)
    common.add_argument("--precision", choices=("exact", "double"), default="exact")
    common.add_argument("--depth", type=int, help="continued-fraction depth")
    common.add_argument("--output", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write to this file instead of stdout")

    parser = _Parser(prog="walk", description="CGMV quantum walks of Riesz-type measures")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("moments", parents=[common], help="moments mu_j")
    p.add_argument("--max", type=int)
    p = sub.add_parser("verblunsky", parents=[common], help="Verblunsky parameters")
    p.add_argument("--count", type=int)
    sub.add_parser("evolve", parents=[common], help="amplitudes at time T")
    p = sub.add_parser("distribution", parents=[common], help="probability rows")
    p.add_argument("--at", help="comma separated times")
    p.add_argument("--upto", type=int, help="every time 0..UPTO")
    sub.add_parser("return-prob", parents=[common], help="mu_t(0) vs the closed form")
    p = sub.add_parser("genfunc-origin", parents=[common], help="origin generating function")
    p.add_argument("--order", type=int)
    sub.add_parser("sets", parents=[common], help="K, Ktilde, R, M point sets")
    p = sub.add_parser("check", parents=[common], help="run a verification")
    p.add_argument("check", choices=sorted(CHECKS))
    return parser


def render(cfg: RunConfig, records: list, checks: list) -> str:
    if cfg.output == "json":
        envelope = {
            "config": {k: v for k, v in asdict(cfg).items() if v is not None},
            "records": [{k: _fmt(v) for k, v in r.items()} for r in records],
            "checks": checks,
        }
        return json.dumps(envelope, indent=2) + "\n"
    buf = io.StringIO()
    # `check` reports its verdicts; per-item detail stays in the JSON records
    rows = checks if cfg.command == "check" or not records else records
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _fmt(v) for k, v in r.items()})
    return buf.getvalue()


def execute(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = vars(build_parser().parse_args(argv))
        out_path = args.pop("out", None)
        cfg = RunConfig(**args).validate()
        records, checks = COMMANDS[cfg.command](cfg)
        text = render(cfg, records, checks)
    except NumericalBreakdownError as exc:
        print(f"walk: numerical breakdown: {exc}", file=stderr)
        return EXIT_BREAKDOWN
    except (UsageError, RieszWalkError) as exc:
        print(f"walk: error: {exc}", file=stderr)
        return EXIT_USAGE
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
