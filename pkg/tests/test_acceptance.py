"""Exit criteria for the build, one test per criterion.

Each test records a one-line PASS/FAIL verdict; conftest.py prints the
collected lines at the end of the session.
"""

import json
import os
import subprocess
import sys

import pytest

from simplex_gauntlet import verification as V

pytestmark = pytest.mark.acceptance


def _judge(record, label, check, max_seconds=None):
    ok = check.passed and (max_seconds is None or check.seconds < max_seconds)
    runtime = f" ({check.seconds:.1f}s" + (f" < {max_seconds:.0f}s)" if max_seconds else ")")
    record(label, ok, f"measured={check.measured}{runtime}")
    assert check.passed, check.line()
    if max_seconds is not None:
        assert check.seconds < max_seconds, f"{label} took {check.seconds:.1f}s"


def test_c01_crossing_lambda(record):
    _judge(record, "C1 crossing lambda2 M=7 in [19.81e-4, 19.91e-4]",
           V.crossing_lambda_m7(), max_seconds=10)


def test_c02_crossing_snr(record):
    _judge(record, "C2 crossing snr M=7 in [3.0e-4, 3.6e-4], x6 maps to C1",
           V.crossing_snr_m7())


def test_c03_crossing_pattern(record):
    _judge(record, "C3 crossings for M=7..30, none for M=3..6 (both conventions)",
           V.crossing_pattern(), max_seconds=300)


def test_c04_fig3_dominance(record):
    _judge(record, "C4 pd_si_snr >= pd_l1 on [0,2], strict for x>=0.01",
           V.fig3_dominance())


def test_c05_dimension_ordering(record):
    _judge(record, "C5 ordering increasing in M (snr=4), decreasing (lambda2=4)",
           V.fig45_ordering())


def test_c06_baselines(record):
    _judge(record, "C6 pd_si(M,0)=1/M +-1e-11, pd_l1(M,0)=1/M, sup pd_l1 < 3/M",
           V.baseline_identities())


def test_c07_oracle_equivalence(record):
    grid = V.mc_agreement()
    antipodal = V.mc_antipodal()
    total = grid.seconds + antipodal.seconds
    ok = grid.passed and antipodal.passed and total < 300
    record("C7 Monte-Carlo vs closed forms (>=95% cells in 3 SE) + SI M=2",
           ok, f"fraction={grid.measured['pass_fraction']:.3f} "
               f"antipodal={antipodal.measured} ({total:.1f}s < 300s)")
    assert grid.passed, grid.line()
    assert antipodal.passed, antipodal.line()
    assert total < 300


def test_c08_rotation_invariance(record):
    _judge(record, "C8 Lc rotation invariance (M=7, snr=0.1)", V.mc_rotation())


def test_c09_eps_continuity(record):
    _judge(record, "C9 eps-displaced L1 approaches pd_l1", V.mc_eps_continuity())


def _simulate_cli(tmp_path, threads):
    out = tmp_path / f"sim_t{threads}.json"
    env = dict(os.environ, SIMPLEX_GAUNTLET_THREADS=str(threads))
    subprocess.run(
        [sys.executable, "-m", "simplex_gauntlet", "simulate", "--set", "lc",
         "--M", "7", "--E", "1", "--direction-seed", "3", "--trials", "300000",
         "--seed", "123", "--out", str(out)],
        check=True, env=env, capture_output=True)
    return out.read_bytes()


def test_c10_determinism(record, tmp_path):
    runs = [_simulate_cli(tmp_path, t) for t in (1, 8, 1, 8)]
    same = all(r == runs[0] for r in runs)
    record("C10 simulate JSON byte-identical under thread caps 1 and 8", same,
           f"p_hat={json.loads(runs[0])['p_hat']}")
    assert same
