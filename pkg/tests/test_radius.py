"""Tests for estimators, oracles, and clouds of the q-numerical radius."""

import numpy as np
import pytest

from qwrange.core import gen_random
from qwrange.errors import DimensionTooSmall, ParamOutOfRange
from qwrange.radius import (QValue, canonical_2x2, classical_radius,
                            cloud_pair, estimate_wq, objective,
                            objective_witness, range_cloud, sample_wq,
                            wq_2x2_exact)

SHIFT = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def test_qvalue_reduction():
    assert QValue.from_scalar(0.3 + 0.4j).q == pytest.approx(0.5)
    assert QValue.from_scalar(-0.6).q == pytest.approx(0.6)
    with pytest.raises(ParamOutOfRange):
        QValue.from_scalar(1.5)


def test_shift_matrix_closed_form():
    value, _ = wq_2x2_exact(SHIFT, 0.6)
    assert value == pytest.approx(0.9, abs=1e-12)


def test_identity_radius_is_q():
    for q in (0.2, 0.5, 0.9, 1.0):
        est = estimate_wq(np.eye(3, dtype=complex), q, restarts=8, seed=0)
        assert est.value == pytest.approx(q, abs=1e-10)


def test_reflection_2x2():
    t = np.diag([1.0, -1.0]).astype(complex)
    value, _ = wq_2x2_exact(t, 0.6)
    assert value == pytest.approx(1.0, abs=1e-12)


def test_estimate_matches_exact_2x2():
    for seed in range(30):
        t = gen_random("ginibre", 2, seed)
        for q in (0.1, 0.5, 0.9, 1.0):
            exact, _ = wq_2x2_exact(t, q)
            est = estimate_wq(t, q, seed=seed)
            assert est.value <= exact + 1e-9
            assert est.value >= exact - 1e-7 * max(exact, 1.0)


def test_sample_below_exact():
    est = sample_wq(SHIFT, 0.6, 200_000, seed=5)
    assert est.value <= 0.9 + 1e-12
    assert est.value >= 0.9 - 5e-3
    # the sampled witness is admissible and reproduces the value
    x, y = est.witness.x, est.witness.y
    assert abs(np.linalg.norm(x) - 1) < 1e-12
    assert abs(np.linalg.norm(y) - 1) < 1e-12
    assert abs(abs(np.sum(x * np.conj(y))) - 0.6) < 1e-12
    assert abs(est.witness.evaluate(SHIFT)) == pytest.approx(est.value,
                                                             abs=1e-12)


def test_witness_soundness():
    for seed in range(10):
        t = gen_random("ginibre", 3, seed)
        est = estimate_wq(t, 0.7, seed=seed)
        x, y = est.witness.x, est.witness.y
        assert abs(np.linalg.norm(x) - 1) < 1e-12
        assert abs(np.linalg.norm(y) - 1) < 1e-12
        assert abs(abs(np.sum(x * np.conj(y))) - 0.7) < 1e-12
        assert abs(est.witness.evaluate(t)) == pytest.approx(est.value,
                                                             abs=1e-10)
        g, y2 = objective_witness(t, 0.7, x)
        assert g == pytest.approx(est.value, abs=1e-12)


def test_objective_matches_witness():
    t = gen_random("ginibre", 4, 1)
    x = np.ones(4, dtype=complex) / 2.0
    g, y = objective_witness(t, 0.5, x)
    assert g == pytest.approx(objective(t, 0.5, x), abs=0.0)
    assert abs(np.vdot(y, t @ x)) == pytest.approx(g, abs=1e-12)


def test_q1_reduces_to_classical():
    for seed in range(20):
        t = gen_random("ginibre", 2, seed)
        exact, _ = wq_2x2_exact(t, 1.0)
        assert exact == pytest.approx(classical_radius(t), abs=1e-8)
    for seed in range(5):
        t = gen_random("ginibre", 4, seed)
        est = estimate_wq(t, 1.0, seed=seed)
        assert est.value == pytest.approx(classical_radius(t), abs=1e-6)


def test_classical_radius_oracles():
    assert classical_radius(SHIFT) == pytest.approx(0.5, abs=1e-9)
    h = gen_random("hermitian", 4, 9)
    w = np.abs(np.linalg.eigvalsh(h)).max()
    assert classical_radius(h) == pytest.approx(w, abs=1e-9)


def test_canonical_form():
    for seed in range(20):
        t = gen_random("ginibre", 2, seed)
        canon = canonical_2x2(t)
        assert canon.a >= canon.b >= 0.0
        assert np.linalg.norm(canon.U.conj().T @ canon.U - np.eye(2)) < 1e-12
        rec = canon.U.conj().T @ t @ canon.U
        assert np.linalg.norm(rec - canon.assemble()) < 1e-10


def test_monotone_effort():
    t = gen_random("ginibre", 4, 11)
    v_small = estimate_wq(t, 0.6, restarts=8, max_iter=100, seed=2).value
    v_big = estimate_wq(t, 0.6, restarts=32, max_iter=400, seed=2).value
    assert v_big >= v_small - 1e-14


def test_dimension_one_rejected():
    with pytest.raises(DimensionTooSmall):
        estimate_wq(np.array([[2.0]]), 0.5)
    est = estimate_wq(np.array([[2.0 + 1.0j]]), 1.0, restarts=2)
    assert est.value == pytest.approx(abs(2.0 + 1.0j), abs=1e-12)


def test_range_cloud_and_membership():
    cloud = range_cloud(SHIFT, 0.6, 2000, seed=7)
    assert cloud.points.shape == (2000,)
    assert cloud.boundary is not None and cloud.boundary.shape == (720,)
    assert np.abs(cloud.boundary).max() == pytest.approx(0.9, abs=1e-6)
    assert np.abs(cloud.points).max() <= 0.9 + 1e-9
    # identity: every value collapses to q
    c2 = range_cloud(np.eye(2, dtype=complex), 0.6, 100, seed=1)
    assert np.allclose(c2.points, 0.6, atol=1e-12)
    # higher dimension: no boundary
    c3 = range_cloud(gen_random("ginibre", 3, 0), 0.6, 100, seed=1)
    assert c3.boundary is None


def test_cloud_pair_replays_points():
    t = gen_random("ginibre", 3, 4)
    cloud = range_cloud(t, 0.7, 50, seed=9)
    for idx in (0, 17, 49):
        pair = cloud_pair(t, 0.7, seed=9, index=idx)
        assert abs(np.linalg.norm(pair.x) - 1) < 1e-12
        assert abs(np.linalg.norm(pair.y) - 1) < 1e-12
        assert abs(abs(pair.inner()) - 0.7) < 1e-12
        assert pair.evaluate(t) == pytest.approx(cloud.points[idx],
                                                 abs=1e-12)


def test_extra_starts_are_used():
    t = gen_random("ginibre", 3, 21)
    ref = estimate_wq(t, 0.5, restarts=64, max_iter=500, seed=0)
    est = estimate_wq(t, 0.5, restarts=1, max_iter=200, seed=1,
                      extra_starts=[ref.witness.x])
    assert est.value >= ref.value - 1e-9
