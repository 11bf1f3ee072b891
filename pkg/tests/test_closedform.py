import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from simplex_gauntlet.closedform import (
    ACCEPT_QUAD_ERROR,
    evaluate,
    pd_l1,
    pd_lc,
    pd_si_lambda,
    pd_si_snr,
)
from simplex_gauntlet.mathkit import DEFAULT_QUADRATURE, DomainError
from simplex_gauntlet.montecarlo import TrialConfig, simulate_pd
from simplex_gauntlet.signals import make_coded_l1, make_l1, make_simplex

# mpmath quad (30 digits) of the simplex integral, M = 7, lambda2 = 19.86e-4
SI_M7_AT_CROSSING = 0.15235749723279068
# same oracle, M = 10, lambda2 = 2
SI_M10_L2 = 0.50545119555744608
PHI_1 = 0.8413447460685429


def test_l1_values():
    assert pd_l1(7, 0.0).value == 1 / 7
    assert pd_l1(7, 1e8).value == pytest.approx(3 / 7, abs=1e-15)
    v = pd_l1(7, 19.86e-4).value
    assert 0.152356 - 2e-5 <= v <= 0.152360 + 2e-5
    assert pd_l1(7, 1.0).quadrature_error == 0.0


def test_l1_domain():
    with pytest.raises(DomainError, match="M >= 3"):
        pd_l1(2, 1.0)
    with pytest.raises(DomainError):
        pd_l1(5, -1.0)
    with pytest.raises(DomainError):
        pd_l1(5, math.nan)


@pytest.mark.parametrize("M", range(2, 11))
def test_si_zero_energy_is_guessing(M):
    assert abs(pd_si_lambda(M, 0.0).value - 1 / M) <= 1e-12
    assert abs(pd_si_snr(M, 0.0).value - 1 / M) <= 1e-12


def test_si_antipodal():
    # M = 2 simplex is +-sqrt(lambda2); correct iff noise > -1 at lambda2 = 1
    assert pd_si_lambda(2, 1.0).value == pytest.approx(PHI_1, abs=1e-12)


def test_si_against_high_precision_quadrature():
    pd = pd_si_lambda(7, 19.86e-4)
    assert abs(pd.value - SI_M7_AT_CROSSING) <= 1e-12
    assert pd.quadrature_error < ACCEPT_QUAD_ERROR
    assert abs(pd_si_lambda(10, 2.0).value - SI_M10_L2) <= 1e-12


def test_si_and_l1_meet_near_reported_crossing():
    assert abs(pd_si_lambda(7, 19.86e-4).value - pd_l1(7, 19.86e-4).value) < 1e-8


def test_lc_near_reported_snr_crossing():
    assert pd_lc(7, 0.0).value == 1 / 7
    assert abs(pd_lc(7, 3.3e-4).value - pd_si_snr(7, 3.3e-4).value) <= 1e-6


def test_si_dimension_orderings():
    assert pd_si_snr(30, 4.0).value > pd_si_snr(3, 4.0).value
    assert pd_si_lambda(30, 4.0).value < pd_si_lambda(3, 4.0).value


@settings(max_examples=30, deadline=None)
@given(M=st.integers(3, 30), x=st.floats(0, 2))
def test_convention_bridges(M, x):
    assert pd_lc(M, x).value == pd_l1(M, (M - 1) * x).value
    bridged = pd_si_lambda(M, (M - 1) * x).value
    assert abs(pd_si_snr(M, x).value - bridged) <= 2 * DEFAULT_QUADRATURE.abs_tol


@settings(max_examples=20, deadline=None)
@given(M=st.integers(3, 12), x=st.floats(1e-4, 2))
def test_monotone_in_argument(M, x):
    h = 1e-3 * x
    for f in (pd_l1, pd_lc, pd_si_lambda, pd_si_snr):
        assert f(M, x + h).value - f(M, x).value > 0


@pytest.mark.parametrize("M", [3, 5, 7, 12, 30])
def test_saturation_split(M):
    assert pd_si_lambda(M, 1e4).value == pytest.approx(1.0, abs=1e-12)
    assert pd_l1(M, 1e4).value == pytest.approx(3 / M, abs=1e-12)
    # at 1e4 both M=3 curves are 1 - (far below an ulp); compare where resolvable
    assert pd_si_lambda(M, 20.0).value > pd_l1(M, 20.0).value


@settings(max_examples=20, deadline=None)
@given(M=st.integers(3, 30), x=st.floats(0, 50))
def test_values_in_range(M, x):
    assert 1 / M <= pd_l1(M, x).value < 3 / M
    si = pd_si_lambda(M, x).value
    assert 1 / M - 1e-12 <= si < 1.0


def test_evaluate_dispatch():
    assert evaluate("si", 7, 1.0, "lambda2").value == pd_si_lambda(7, 1.0).value
    assert evaluate("si", 7, 1.0, "snr").value == pd_si_snr(7, 1.0).value
    with pytest.raises(DomainError, match="lambda2"):
        evaluate("l1", 7, 1.0, "snr")
    with pytest.raises(DomainError, match="snr"):
        evaluate("lc", 7, 1.0, "lambda2")
    with pytest.raises(DomainError):
        evaluate("psk", 7, 1.0, "snr")


@pytest.mark.slow
@settings(max_examples=6, deadline=None, derandomize=True)
@given(family=st.sampled_from(["L1", "SI", "Lc"]), M=st.integers(3, 10),
       x=st.floats(0.05, 4))
def test_closed_forms_match_simulation(family, M, x):
    if family == "L1":
        sset, ref = make_l1(M, x * M / 2), pd_l1(M, x).value
    elif family == "SI":
        sset, ref = make_simplex(M, x), pd_si_lambda(M, x).value
    else:
        sset, ref = make_coded_l1(M, (M - 1) * x * M / 2, 5), pd_lc(M, x).value
    est = simulate_pd(TrialConfig(sset, trials=1_000_000, seed=99))
    assert abs(est.p_hat - ref) <= 3 * est.stderr
