import math
from itertools import product

import numpy as np
import pytest

from simplex_gauntlet.closedform import pd_l1, pd_lc, pd_si_lambda
from simplex_gauntlet.mathkit import DomainError
from simplex_gauntlet.montecarlo import (
    BLOCK_SIZE,
    TrialConfig,
    decode_min_distance,
    simulate_pd,
)
from simplex_gauntlet.signals import (
    SignalSet,
    make_coded_l1,
    make_l1,
    make_l1_eps,
    make_simplex,
)

PHI_1 = 0.8413447460685429


def test_decode_zero_noise():
    s = make_simplex(6, 2.0)
    for m in range(6):
        assert decode_min_distance(s.vectors[m], s, "lowest_index") == m + 1


def test_decode_nearest_outer():
    s = make_l1(5, 1.0)
    assert decode_min_distance([0.9], s, "lowest_index") == 2
    assert decode_min_distance([-0.7], s, "uniform_random",
                               np.random.default_rng(0)) == 1


def test_decode_tie_uniform():
    s = make_l1(5, 1.0)
    y = np.array([0.1])
    # brute-force the co-minimiser set: the three origin vectors
    d = [float(np.sum((y - v) ** 2)) for v in s.vectors]
    ties = [i + 1 for i, di in enumerate(d) if di == min(d)]
    assert ties == [3, 4, 5]
    rng = np.random.default_rng(7)
    n = 30_000
    picks = [decode_min_distance(y, s, "uniform_random", rng) for _ in range(n)]
    assert set(picks) == set(ties)
    # a cluster transmit (say s_3) is decoded correctly with prob 1/len(ties)
    p = picks.count(3) / n
    assert abs(p - 1 / len(ties)) <= 3 * math.sqrt(p * (1 - p) / n)
    assert decode_min_distance(y, s, "lowest_index") == 3


def test_decode_dimension_mismatch():
    with pytest.raises(DomainError):
        decode_min_distance([0.0, 1.0], make_l1(4, 1.0))


def test_config_validation():
    s = make_l1(4, 1.0)
    with pytest.raises(DomainError):
        TrialConfig(s, trials=0)
    with pytest.raises(DomainError):
        TrialConfig(s, sigma2=0.0)
    with pytest.raises(DomainError):
        TrialConfig(s, tie_rule="coin")


def test_antipodal_oracle():
    est = simulate_pd(TrialConfig(make_simplex(2, 1.0), trials=1_000_000, seed=3))
    assert abs(est.p_hat - PHI_1) <= 3 * est.stderr


def test_noiseless_limit():
    s = make_simplex(5, 1.0)
    est = simulate_pd(TrialConfig(s, sigma2=1e-12, trials=5000, seed=1))
    assert est.p_hat == 1.0 and est.stderr == 0.0


def test_estimate_invariants():
    s = make_l1(7, 2.0)
    est = simulate_pd(TrialConfig(s, trials=70_001, seed=11))
    assert est.stderr == math.sqrt(est.p_hat * (1 - est.p_hat) / est.trials)
    weighted = float(np.dot(s.priors, est.per_signal_correct))
    assert abs(est.p_hat - weighted) <= 1e-12
    assert est.seed == 11


def test_single_trial():
    est = simulate_pd(TrialConfig(make_l1(7, 1.0), trials=1, seed=5))
    assert est.p_hat in (0.0, 1.0)
    assert est.stderr == 0.0
    assert sum(r is not None for r in est.per_signal_correct) == 1


def test_deterministic_across_workers():
    cfg = TrialConfig(make_coded_l1(7, 1.0, 1), trials=5 * BLOCK_SIZE + 123, seed=42)
    runs = [simulate_pd(cfg, workers=w) for w in (1, 2, 8)]
    assert runs[0] == runs[1] == runs[2]
    assert simulate_pd(cfg) == runs[0]


def test_nonuniform_priors_custom_set():
    s = SignalSet([[-1.0], [1.0]], [0.25, 0.75])
    est = simulate_pd(TrialConfig(s, trials=200_000, seed=8, tie_rule="lowest_index"))
    # min-distance decoding ignores priors: each side is right w.p. Phi(1)
    assert abs(est.p_hat - PHI_1) <= 3 * est.stderr


@pytest.mark.slow
def test_closed_form_agreement_grid():
    cells, passed = 0, 0
    for (family, M), lam2 in product(product(["L1", "SI", "Lc"], [3, 7, 10]),
                                     [0.2, 0.7, 1.5, 2.5, 4.0]):
        if family == "L1":
            s, ref = make_l1(M, lam2 * M / 2), pd_l1(M, lam2).value
        elif family == "SI":
            s, ref = make_simplex(M, lam2), pd_si_lambda(M, lam2).value
        else:
            s, ref = make_coded_l1(M, lam2 * M / 2, 2), pd_lc(M, lam2 / (M - 1)).value
        est = simulate_pd(TrialConfig(s, trials=1_000_000, seed=1000 + cells))
        cells += 1
        passed += abs(est.p_hat - ref) <= 3 * est.stderr
    assert passed / cells >= 0.95


def test_rotation_invariance():
    M, E = 7, 2.0
    a = simulate_pd(TrialConfig(make_coded_l1(M, E, 10), trials=400_000, seed=1))
    b = simulate_pd(TrialConfig(make_coded_l1(M, E, 20), trials=400_000, seed=2))
    assert abs(a.p_hat - b.p_hat) <= 3 * math.hypot(a.stderr, b.stderr)


def test_tie_rules_same_average_different_breakdown():
    s = make_l1(7, 2.0)
    u = simulate_pd(TrialConfig(s, trials=500_000, seed=4, tie_rule="uniform_random"))
    lo = simulate_pd(TrialConfig(s, trials=500_000, seed=5, tie_rule="lowest_index"))
    assert abs(u.p_hat - lo.p_hat) <= 3 * math.hypot(u.stderr, lo.stderr)
    # lowest-index hands every cluster decision to s_3
    assert lo.per_signal_correct[2] > 0.2
    assert lo.per_signal_correct[3] == 0.0
    assert u.per_signal_correct[3] > 0.0


def test_eps_set_matches_l1():
    M, E = 7, 3.5
    est = simulate_pd(TrialConfig(make_l1_eps(M, E, 1e-8), trials=1_000_000, seed=6))
    assert abs(est.p_hat - pd_l1(M, 2 * E / M).value) <= 3 * est.stderr
