import math

import numpy as np
import pytest

from conftest import make_scenario
from uavtilt.antenna import TILT_GRID, array_gain
from uavtilt.channel import gue_path_loss, uav_path_loss
from uavtilt.geometry import bearing_angles, distance3d
from uavtilt.radio import (
    associate_gues,
    gue_received_power,
    gue_sir,
    gue_sum_rate,
    rsrp_matrix,
    rsrp_uav,
    serving_cell,
    sir_matrix,
    sum_rate,
)


def random_scenario(rng, m=6, k=12):
    gbs = np.column_stack([rng.uniform(0, 2000, (m, 2)), np.full(m, 35.0)])
    gue = np.column_stack([rng.uniform(0, 2000, (k, 2)), np.full(k, 1.5)])
    return make_scenario(gbs, gue)


def brute_gain(scenario, m, point, beta):
    return max(
        array_gain(bearing_angles(scenario.gbs_positions[m], o, point)[0],
                   bearing_angles(scenario.gbs_positions[m], o, point)[1], beta, scenario.array_config)
        for o in scenario.sector_orientations[m]
    )


def test_rsrp_composition(omni_like):
    sc = make_scenario([[0.0, 500.0, 100.0], [1500.0, 1500.0, 35.0]], orientations=[0.0], array_config=omni_like)
    wp = (1000.0, 500.0, 100.0)
    assert rsrp_uav(sc, wp, 0, 0.0) == pytest.approx(46 - 96.864, abs=1e-3)
    assert rsrp_uav(sc, wp, 0, 0.0, shadow=3.0) == pytest.approx(rsrp_uav(sc, wp, 0, 0.0) - 3.0)


def test_rsrp_matches_brute_force(rng):
    sc = random_scenario(rng)
    wp = (700.0, 900.0, 100.0)
    for m in range(sc.n_gbs):
        for beta in (-2, 6, 12):
            expected = 46.0 + brute_gain(sc, m, wp, beta) - uav_path_loss(distance3d(sc.gbs_positions[m], wp))
            assert rsrp_uav(sc, wp, m, beta) == pytest.approx(expected, abs=1e-9)


def test_equidistant_gbs_equal_rsrp():
    sc = make_scenario([[500.0, 1000.0, 35.0], [1500.0, 1000.0, 35.0]], orientations=[[0.0], [180.0]])
    wp = (1000.0, 1000.0, 100.0)
    assert rsrp_uav(sc, wp, 0, 4) == pytest.approx(rsrp_uav(sc, wp, 1, 4))


def test_serving_cell_tie_break_and_dominance(omni_like):
    pts = [[100.0, 100.0, 35.0]] * 2 + [[1000.0, 1000.0, 35.0]] + [[100.0, 100.0, 35.0]] * 3
    sc = make_scenario(pts)
    idx, _ = serving_cell(sc, (150.0, 120.0, 100.0), 6)
    assert idx == 0
    shadow = np.zeros(6)
    shadow[[0, 1]] = 50.0
    assert serving_cell(sc, (150.0, 120.0, 100.0), 6, shadow)[0] == 3
    # single-element sectors: no array nulls, so the nearest GBS dominates
    near = make_scenario([[10.0, 10.0, 35.0], [1000.0, 1000.0, 35.0], [1990.0, 10.0, 35.0]],
                         array_config=omni_like)
    assert serving_cell(near, (1300.0, 1000.0, 100.0), 0)[0] == 1


def test_serving_cell_matches_scan_and_offset_invariance(rng):
    for _ in range(10):
        sc = random_scenario(rng, m=8)
        wp = (*rng.uniform(0, 2000, 2), 100.0)
        beta = float(rng.choice(TILT_GRID))
        shadow = rng.normal(0, 2.65, sc.n_gbs)
        scan = [rsrp_uav(sc, wp, m, beta, shadow[m]) for m in range(sc.n_gbs)]
        idx, best = serving_cell(sc, wp, beta, shadow)
        assert idx == int(np.argmax(scan))
        assert best == pytest.approx(max(scan))
        assert serving_cell(sc, wp, beta, shadow + 7.5)[0] == idx


def test_sir_examples():
    assert sir_matrix(np.array([[2.0, 2.0]]))[0, 0] == pytest.approx(1.0)
    assert sir_matrix(np.array([[4.0, 1.0, 1.0]]))[0, 0] == pytest.approx(2.0)
    p = np.array([[3.0, 0.5, 0.25]])
    assert np.allclose(sir_matrix(13.0 * p), sir_matrix(p))
    with pytest.raises(ValueError):
        sir_matrix(np.array([[1.0]]))


def test_gue_power_and_sir_brute_force(rng):
    sc = random_scenario(rng, m=4, k=5)
    for beta in (0, 10):
        for k in range(sc.n_gue):
            powers = []
            for m in range(sc.n_gbs):
                d = distance3d(sc.gbs_positions[m], sc.gue_positions[k])
                g = brute_gain(sc, m, sc.gue_positions[k], beta)
                powers.append(10 ** ((46.0 + g - gue_path_loss(d, sc.gue_channel)) / 10))
            assert gue_received_power(sc, beta)[k] == pytest.approx(powers, rel=1e-9)
            for m in range(sc.n_gbs):
                assert gue_sir(sc, k, m, beta) == pytest.approx(powers[m] / (sum(powers) - powers[m]), rel=1e-9)


def test_association(rng):
    sc = make_scenario([[500.0, 500.0, 35.0], [1500.0, 500.0, 35.0]], [[700.0, 500.0, 1.5]])
    a = associate_gues(sc, 6)
    assert a.loads.sum() == 1 and a.serving[0] == 0
    mirror = make_scenario([[500.0, 1000.0, 35.0], [1500.0, 1000.0, 35.0]],
                           [[700.0, 1000.0, 1.5], [1300.0, 1000.0, 1.5]], orientations=[[0.0], [180.0]])
    assert list(associate_gues(mirror, 6).loads) == [1, 1]
    for _ in range(5):
        sc = random_scenario(rng, m=5, k=20)
        beta = float(rng.choice(TILT_GRID))
        assoc = associate_gues(sc, beta)
        for k in range(sc.n_gue):
            sirs = [gue_sir(sc, k, m, beta) for m in range(sc.n_gbs)]
            assert assoc.serving[k] == int(np.argmax(sirs))
        assert assoc.loads.sum() == sc.n_gue
        assert sum(len(g) for g in assoc.members) == sc.n_gue


def test_sum_rate_examples():
    assert sum_rate([1.0], [0], [1]) == pytest.approx(1.0)
    assert sum_rate([3.0] * 4, [0] * 4, [4, 0]) == pytest.approx(2.0)
    assert sum_rate([], [], [0, 0]) == 0.0
    empty = make_scenario([[500.0, 500.0, 35.0], [1500.0, 500.0, 35.0]])
    assert gue_sum_rate(empty, 6) == 0.0


def test_sum_rate_oracle_purity_and_permutation(rng):
    sc = random_scenario(rng, m=5, k=15)
    for beta in TILT_GRID:
        assoc = associate_gues(sc, beta)
        expected = sum(math.log2(1 + assoc.sir[k]) / assoc.loads[assoc.serving[k]] for k in range(sc.n_gue))
        first = gue_sum_rate(sc, beta)
        assert first == pytest.approx(expected, rel=1e-12)
        fresh = make_scenario(sc.gbs_positions, sc.gue_positions)
        assert gue_sum_rate(fresh, beta) == first
        perm = make_scenario(sc.gbs_positions, sc.gue_positions[rng.permutation(sc.n_gue)])
        assert gue_sum_rate(perm, beta) == pytest.approx(first, rel=1e-12)


def test_scenario_validation():
    with pytest.raises(ValueError):
        make_scenario([[3000.0, 0.0, 35.0]])
    with pytest.raises(IndexError):
        rsrp_uav(make_scenario([[10.0, 10.0, 35.0]]), (0, 0, 100), 3, 0)


def test_rsrp_matrix_shape(rng):
    sc = random_scenario(rng, m=3)
    pts = np.column_stack([rng.uniform(0, 2000, (7, 2)), np.full(7, 100.0)])
    assert rsrp_matrix(sc, pts, 2).shape == (7, 3)
