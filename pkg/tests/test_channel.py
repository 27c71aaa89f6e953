import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from uavtilt.channel import (
    GueChannelParams,
    ShadowingParams,
    UavChannelParams,
    correlation_matrix,
    gue_path_loss,
    sample_correlated_shadowing,
    shadow_sigma,
    shadowing_factor,
    uav_path_loss,
)


def cost231_reference(d_m, f_mhz=1500.0, hb=35.0, hm=1.5):
    """Textbook COST231-Hata, medium city / suburban."""
    a_hm = (1.1 * math.log10(f_mhz) - 0.7) * hm - (1.56 * math.log10(f_mhz) - 0.8)
    return (46.3 + 33.9 * math.log10(f_mhz) - 13.82 * math.log10(hb) - a_hm
            + (44.9 - 6.55 * math.log10(hb)) * math.log10(d_m / 1000.0))


def test_uav_path_loss_examples():
    assert uav_path_loss(1000.0) == pytest.approx(20.3 * 3 + 20 * math.log10(20 * math.pi), abs=1e-9)
    assert uav_path_loss(1000.0) == pytest.approx(96.864, abs=1e-3)
    assert uav_path_loss(1.0) == pytest.approx(35.964, abs=1e-3)
    assert UavChannelParams(h_uav=300).slope == 20.0
    assert uav_path_loss(1000.0, shadow=2.5) == pytest.approx(uav_path_loss(1000.0) + 2.5)


@given(st.floats(40, 300), st.floats(1, 1e5), st.floats(1.001, 10))
def test_uav_path_loss_slope_and_monotone(h, d, factor):
    p = UavChannelParams(h_uav=h)
    assert p.slope >= 20.0
    assert uav_path_loss(d * factor, p) > uav_path_loss(d, p)


def test_path_loss_domain():
    with pytest.raises(ValueError):
        uav_path_loss(0.0)
    with pytest.raises(ValueError):
        gue_path_loss(-1.0, GueChannelParams.cost231())
    with pytest.raises(ValueError):
        UavChannelParams(h_uav=20)


def test_gue_path_loss_cost231():
    p = GueChannelParams.cost231(1.5, 35.0, 1.5)
    assert p.A == pytest.approx(132.59, abs=0.01)
    assert p.B == pytest.approx(34.79, abs=0.01)
    assert p.C == 0.0
    for d in (100.0, 1000.0, 2500.0):
        assert gue_path_loss(d, p) == pytest.approx(cost231_reference(d), abs=1e-9)
    assert gue_path_loss(1000.0, p) == pytest.approx(132.59, abs=0.01)
    assert gue_path_loss(100.0, p) == pytest.approx(97.80, abs=0.01)
    flat = GueChannelParams(A=120.0, B=0.0, C=3.0)
    assert gue_path_loss(np.array([10.0, 1e4]), flat) == pytest.approx([123.0, 123.0])


def test_shadow_sigma():
    assert shadow_sigma(0) == 4.2
    assert shadow_sigma(100) == pytest.approx(2.6514, abs=1e-4)
    assert shadow_sigma(300) == pytest.approx(4.2 * math.exp(-1.38), abs=1e-12)
    assert shadow_sigma(300) < shadow_sigma(100)


def test_correlation_matrix_values():
    pts = np.array([[0, 0, 100], [100, 0, 100], [200, 0, 100]], dtype=float)
    r = correlation_matrix(pts, ShadowingParams(sigma=1.0))
    assert r[0, 0] == 1.0
    assert r[0, 1] == pytest.approx(0.82, abs=1e-15)
    assert r[0, 2] == pytest.approx(0.6724, abs=1e-15)
    r2 = correlation_matrix(pts, ShadowingParams(sigma=2.0))
    assert np.allclose(np.diag(r2), 4.0)


@given(st.lists(st.floats(0, 3000), min_size=1, max_size=30))
def test_correlation_matrix_properties(xs):
    pts = np.column_stack([xs, np.zeros(len(xs)), np.full(len(xs), 100.0)])
    r = correlation_matrix(pts, ShadowingParams(sigma=1.5))
    assert np.array_equal(r, r.T)
    assert np.all(r > 0) and np.all(r <= 1.5**2 + 1e-12)
    assert np.all(np.isfinite(shadowing_factor(pts, ShadowingParams(sigma=1.5))))


def test_scalar_and_perfect_correlation(rng):
    single = sample_correlated_shadowing(np.array([[0.0, 0, 100]]), ShadowingParams(sigma=2.0), rng, n_rows=5)
    assert single.shape == (5, 1)
    same = np.zeros((6, 3))
    rows = sample_correlated_shadowing(same, ShadowingParams(sigma=1.0, rho=0.999999), rng, n_rows=4)
    assert np.allclose(rows, rows[:, :1], atol=1e-4)


def test_near_duplicate_waypoints_factorize():
    pts = np.array([[0.0, 0, 100], [1e-9, 0, 100], [50, 0, 100]])
    factor = shadowing_factor(pts, ShadowingParams(sigma=1.0))
    assert np.all(np.isfinite(factor))


def test_sample_moments(rng):
    pts = np.column_stack([np.arange(0, 201, 50.0), np.zeros(5), np.full(5, 100.0)])
    p = ShadowingParams(sigma=2.6514)
    draws = sample_correlated_shadowing(pts, p, rng, n_rows=20000)
    n = len(draws)
    assert np.all(np.abs(draws.mean(axis=0)) <= 3 * p.sigma / math.sqrt(n))
    var_se = p.sigma**2 * math.sqrt(2.0 / (n - 1))
    assert np.all(np.abs(draws.var(axis=0, ddof=1) - p.sigma**2) <= 3 * var_se)
    emp = np.corrcoef(draws.T)
    assert emp[0, 2] == pytest.approx(0.82, abs=0.02)
    assert emp[0, 4] == pytest.approx(0.82**2, abs=0.02)
