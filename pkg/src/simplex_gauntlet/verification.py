"""Verification checks grouped into the suites run by ``verify``.

Each check returns a :class:`Check` with the measured value and the
tolerance it was judged against.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import analysis, closedform, signals
from .montecarlo import DEFAULT_SEED, TrialConfig, simulate_pd

LAMBDA_BAND = (19.81e-4, 19.91e-4)
SNR_BAND = (3.0e-4, 3.6e-4)
MC_TRIALS = 1_000_000
MC_GRID_M = (3, 7, 10)
MC_GRID_X = (0.1, 0.5, 1.0, 2.0, 4.0)
MC_PASS_FRACTION = 0.95
EPS_VALUES = (1e-3, 1e-5, 1e-7)
EPS_ENERGY = 3.5  # lambda2 = 1 for M = 7


@dataclass
class Check:
    name: str
    passed: bool
    measured: object
    tolerance: object
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: measured={self.measured} tolerance={self.tolerance}"


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        check = fn(*args, **kwargs)
        check.seconds = time.perf_counter() - t0
        return check
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- crossings ---------------------------------------------------------------

@_timed
def crossing_lambda_m7() -> Check:
    res = analysis.find_crossing_lambda(7)
    lo, hi = LAMBDA_BAND
    ok = res.found and lo <= res.x_cross <= hi
    return Check("crossing_lambda_M7", ok, res.x_cross,
                 {"band": [lo, hi], "max_seconds": 10.0},
                 details=res.to_dict(include_scan=False))


@_timed
def crossing_snr_m7() -> Check:
    snr = analysis.find_crossing_snr(7)
    lam = analysis.find_crossing_lambda(7)
    lo, hi = SNR_BAND
    mapped = snr.x_cross * 6
    slack = 6 * analysis.DEFAULT_X_TOL + analysis.DEFAULT_X_TOL + 1e-10
    ok = (snr.found and lam.found and lo <= snr.x_cross <= hi
          and abs(mapped - lam.x_cross) <= slack)
    return Check("crossing_snr_M7", ok,
                 {"x_cross": snr.x_cross, "times_6": mapped,
                  "lambda_x_cross": lam.x_cross},
                 {"band": [lo, hi], "mapping_slack": slack})


@_timed
def crossing_pattern(m_found=range(7, 31), m_absent=range(3, 7)) -> Check:
    wrong = []
    for conv in ("lambda2", "snr"):
        for M in m_found:
            if not analysis.find_crossing(M, conv).found:
                wrong.append((M, conv, "expected crossing"))
        for M in m_absent:
            if analysis.find_crossing(M, conv).found:
                wrong.append((M, conv, "unexpected crossing"))
    return Check("crossing_existence_pattern", not wrong, wrong or "as expected",
                 {"found_for": [min(m_found), max(m_found)],
                  "absent_for": [min(m_absent), max(m_absent)],
                  "max_seconds": 300.0})


# -- figures -----------------------------------------------------------------

@_timed
def fig3_dominance() -> Check:
    curves = [analysis.CurveSpec("si", "snr", 7), analysis.CurveSpec("l1", "snr", 7)]
    table = analysis.sweep(curves, 0.0, 2.0, 200, "linear")
    si = table.column(curves[0].label)
    l1 = table.column(curves[1].label)
    x = table.x
    weak = bool(np.all(si >= l1))
    strict = bool(np.all(si[x >= 0.01] > l1[x >= 0.01]))
    return Check("fig3_si_dominates_l1", weak and strict,
                 {"min_gap": float(np.min(si - l1)),
                  "min_gap_x_ge_0.01": float(np.min((si - l1)[x >= 0.01]))},
                 "si >= l1 everywhere, strict for x >= 0.01")


@_timed
def fig45_ordering(ms=(3, 7, 20, 30)) -> Check:
    by_snr = [closedform.pd_si_snr(M, 4.0).value for M in ms]
    by_lam = [closedform.pd_si_lambda(M, 4.0).value for M in ms]
    inc = all(a < b for a, b in zip(by_snr, by_snr[1:]))
    dec = all(a > b for a, b in zip(by_lam, by_lam[1:]))
    return Check("fig4_fig5_ordering_reversal", inc and dec,
                 {"snr_4": by_snr, "lambda2_4": by_lam},
                 "strictly increasing in M (snr), strictly decreasing (lambda2)")


# -- closed forms against simulation -----------------------------------------

@_timed
def baseline_identities() -> Check:
    si_dev = max(abs(closedform.pd_si_lambda(M, 0.0).value - 1 / M)
                 for M in range(2, 11))
    l1_exact = all(closedform.pd_l1(M, 0.0).value == 1 / M for M in range(3, 11))
    grid = np.concatenate([[0.0], np.logspace(-8, 6, 400)])
    l1_below = all(max(closedform.pd_l1(M, x).value for x in grid) < 3 / M
                   for M in range(3, 11))
    ok = si_dev <= 1e-11 and l1_exact and l1_below
    return Check("baseline_identities", ok,
                 {"si_max_dev": si_dev, "l1_exact_1_over_M": l1_exact,
                  "l1_below_3_over_M": l1_below},
                 {"si_tol": 1e-11})


def _mc_cells():
    cells = []
    for family in ("L1", "SI", "Lc"):
        for M in MC_GRID_M:
            for x in MC_GRID_X:
                if family == "L1":
                    sset = signals.make_l1(M, x * M / 2)
                    ref = closedform.pd_l1(M, x).value
                elif family == "SI":
                    sset = signals.make_simplex(M, x)
                    ref = closedform.pd_si_lambda(M, x).value
                else:
                    sset = signals.make_coded_l1(M, (M - 1) * x * M / 2, 0)
                    ref = closedform.pd_lc(M, x).value
                cells.append((family, M, x, sset, ref))
    return cells


@_timed
def mc_agreement(trials: int = MC_TRIALS, seed: int = DEFAULT_SEED) -> Check:
    rows = []
    for k, (family, M, x, sset, ref) in enumerate(_mc_cells()):
        est = simulate_pd(TrialConfig(sset, trials=trials, seed=seed + k))
        z = (est.p_hat - ref) / est.stderr if est.stderr > 0 else math.inf
        rows.append({"family": family, "M": M, "x": x, "seed": seed + k,
                     "p_hat": est.p_hat, "stderr": est.stderr,
                     "closed_form": ref, "z": z, "pass": abs(z) <= 3})
    frac = sum(r["pass"] for r in rows) / len(rows)
    return Check("mc_agreement_grid", frac >= MC_PASS_FRACTION,
                 {"pass_fraction": frac, "cells": len(rows)},
                 {"k_stderr": 3, "min_fraction": MC_PASS_FRACTION,
                  "trials": trials, "max_seconds": 300.0},
                 details={"cells": rows})


@_timed
def mc_antipodal(trials: int = MC_TRIALS, seed: int = DEFAULT_SEED) -> Check:
    est = simulate_pd(TrialConfig(signals.make_simplex(2, 1.0), trials=trials, seed=seed))
    target = 0.841345
    ok = abs(est.p_hat - target) <= 3 * est.stderr
    return Check("mc_si_M2_antipodal", ok,
                 {"p_hat": est.p_hat, "stderr": est.stderr},
                 {"target": target, "k_stderr": 3, "seed": seed})


@_timed
def mc_rotation(trials: int = MC_TRIALS, seed: int = DEFAULT_SEED) -> Check:
    M, snr = 7, 0.1
    E = (M - 1) * snr * M / 2
    a = simulate_pd(TrialConfig(signals.make_coded_l1(M, E, 1), trials=trials, seed=seed))
    b = simulate_pd(TrialConfig(signals.make_coded_l1(M, E, 2), trials=trials, seed=seed + 1))
    comb = math.hypot(a.stderr, b.stderr)
    return Check("mc_lc_rotation_invariance", abs(a.p_hat - b.p_hat) <= 3 * comb,
                 {"p_hat_seed1": a.p_hat, "p_hat_seed2": b.p_hat,
                  "diff": a.p_hat - b.p_hat},
                 {"k_combined_stderr": 3, "combined_stderr": comb})


@_timed
def mc_eps_continuity(trials: int = MC_TRIALS, seed: int = DEFAULT_SEED) -> Check:
    M = 7
    ref = closedform.pd_l1(M, 2 * EPS_ENERGY / M).value
    ests = [simulate_pd(TrialConfig(signals.make_l1_eps(M, EPS_ENERGY, eps),
                                    trials=trials, seed=seed))
            for eps in EPS_VALUES]
    devs = [abs(e.p_hat - ref) for e in ests]
    decreasing = all(a > b for a, b in zip(devs, devs[1:]))
    final_ok = devs[-1] <= 3 * ests[-1].stderr
    return Check("mc_eps_continuity", decreasing and final_ok,
                 {"eps": list(EPS_VALUES), "abs_deviation": devs,
                  "final_stderr": ests[-1].stderr},
                 {"strictly_decreasing": True, "final_k_stderr": 3,
                  "E": EPS_ENERGY, "seed": seed, "trials": trials})


SUITES = {
    "crossings": (crossing_lambda_m7, crossing_snr_m7, crossing_pattern),
    "figures": (fig3_dominance, fig45_ordering),
    "closedform": (baseline_identities, mc_agreement, mc_antipodal,
                   mc_rotation, mc_eps_continuity),
}


def run_suite(name: str) -> list:
    return [check() for check in SUITES[name]]


def report(name: str, checks: list) -> dict:
    return {"suite": name,
            "passed": all(c.passed for c in checks),
            "checks": [asdict(c) for c in checks]}
