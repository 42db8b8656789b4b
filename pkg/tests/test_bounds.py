"""Tests for the inequality-check library."""

import numpy as np
import pytest

from qwrange import bounds
from qwrange.bounds import (DEFAULT, FAST, alpha_r_rhs,
                            bracket_factor, nilpotent_factor,
                            projection_dilation, replay)
from qwrange.core import gen_random
from qwrange.errors import (NotNilpotent, NotPositive, NotProjection,
                            ParamOutOfRange)
from qwrange.radius import wq_2x2_exact


def _vecs(dim, seed):
    rng = np.random.default_rng(seed)
    return [rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            for _ in range(3)]


def test_factor_values():
    assert bracket_factor(1.0) == pytest.approx(1.0)
    assert bracket_factor(0.6) == pytest.approx((0.6 + 1.6) / 0.6)
    assert nilpotent_factor(0.6) == pytest.approx(1.1)
    with pytest.raises(ParamOutOfRange):
        bracket_factor(0.0)
    with pytest.raises(ParamOutOfRange):
        nilpotent_factor(1.0)


def test_alpha_r_rhs_dominates_radius():
    for seed in range(5):
        s = gen_random("ginibre", 3, seed)
        for q in (0.2, 0.6, 1.0):
            exact = bounds._whi(s, q)
            rhs = alpha_r_rhs(s, q, 0.5, 1.0)
            assert exact ** 2 <= rhs + 1e-12
    with pytest.raises(ParamOutOfRange):
        alpha_r_rhs(np.eye(2), 0.5, 1.5, 1.0)
    with pytest.raises(ParamOutOfRange):
        alpha_r_rhs(np.eye(2), 0.5, 0.5, 0.5)


def test_whi_dominates_exact_2x2():
    for seed in range(20):
        t = gen_random("ginibre", 2, seed)
        for q in (0.3, 0.7, 1.0):
            exact, _ = wq_2x2_exact(t, q)
            assert bounds._whi(t, q) >= exact - 1e-12


def test_report_shape():
    t = gen_random("ginibre", 2, 0)
    reps = bounds.check_norm_sandwich(t, 0.6, seed=0)
    assert [r.name for r in reps] == ["norm_sandwich_lower",
                                      "norm_sandwich_upper"]
    for r in reps:
        assert r.slack == r.rhs - r.lhs
        assert r.passed == (r.slack >= -r.tol)
        assert r.q == 0.6
        assert "T" in r.witnesses


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("q", [0.3, 0.7, 1.0])
def test_all_checks_pass(dim, q):
    s = 100 * dim + int(10 * q)
    T1, T2, T3, T4 = (gen_random("ginibre", dim, s + k) for k in range(4))
    reps = []
    reps += bounds.check_norm_sandwich(T1, q, seed=s)
    reps += bounds.check_power_ineq(T1, q, n=3, seed=s)
    reps += bounds.check_basic_props(T1, T2, T3, T4, q, seed=s)
    for kind in ("diag", "sym", "skew"):
        reps += bounds.check_sandwich(kind, T1, T2, q, seed=s)
    reps += bounds.check_alpha_r_upper(T1, q, alpha=0.4, r=2.0, seed=s)
    reps += bounds.check_four_block_upper(T1, T2, T3, T4, q, seed=s)
    if q < 1.0:
        n0 = gen_random("nilpotent_sq_zero", dim, s)
        reps += bounds.check_nilpotent_upper(n0, q, seed=s)
        reps += bounds.check_offdiag_bounds(T2, T3, q, seed=s)
    reps += bounds.check_lower_products(T2, T3, q, n=2, seed=s)
    reps += bounds.check_power_structure(T1, T2, q, n=3, seed=s)
    a, b, c = _vecs(dim, s)
    reps += bounds.check_vector_inequalities(T1, a, b, c, t=0.4, seed=s)
    reps += bounds.check_radius_gap(T1, q, seed=s)
    reps += bounds.check_offdiag_product_upper(T1, T2, q, seed=s)
    reps += bounds.check_buzano_uppers(T1, T2, T3, q, seed=s)
    pr = gen_random("projection", dim, s)
    ps = gen_random("psd", dim, s + 9)
    reps += bounds.check_commutators("projection", pr, T1, q, seed=s)
    reps += bounds.check_commutators("positive", ps, T1, q, seed=s)
    bad = [(r.name, r.slack, r.tol) for r in reps if not r.passed]
    assert bad == []


def test_vector_inequalities_tight_tolerance():
    for seed in range(50):
        dim = 2 + seed % 3
        p = gen_random("psd", dim, seed)
        g = gen_random("ginibre", dim, seed + 1)
        a, b, c = _vecs(dim, seed)
        for s in (p, g):
            for r in bounds.check_vector_inequalities(s, a, b, c, t=0.3,
                                                      seed=seed):
                assert r.passed
                assert r.cls == "vector"


def test_preconditions_raise():
    t = gen_random("ginibre", 2, 0)
    with pytest.raises(NotNilpotent):
        bounds.check_nilpotent_upper(t, 0.5)
    with pytest.raises(NotProjection):
        bounds.check_commutators("projection", t, t, 0.5)
    with pytest.raises(NotPositive):
        bounds.check_commutators("positive", t, t, 0.5)
    with pytest.raises(ParamOutOfRange):
        bounds.check_sandwich("bogus", t, t, 0.5)
    with pytest.raises(ParamOutOfRange):
        bounds.check_offdiag_bounds(t, t, 1.0)
    with pytest.raises(ParamOutOfRange):
        bounds.check_nilpotent_upper(gen_random("nilpotent_sq_zero", 2, 0),
                                     1.0)


def test_replay_reproduces():
    t1 = gen_random("ginibre", 3, 5)
    t2 = gen_random("ginibre", 3, 6)
    reps = []
    reps += bounds.check_sandwich("skew", t1, t2, 0.6, seed=9)
    reps += bounds.check_norm_sandwich(t1, 0.4, seed=3)
    reps += bounds.check_lower_products(t1, t2, 0.7, n=2, seed=4)
    reps += bounds.check_commutators("positive", gen_random("psd", 3, 1),
                                     t1, 0.5, seed=8)
    for rep in reps:
        again = replay(rep)
        assert abs(again.lhs - rep.lhs) < 1e-9
        assert abs(again.rhs - rep.rhs) < 1e-9


def test_projection_dilation():
    for seed in range(10):
        c = gen_random("contraction01", 3, seed)
        p = projection_dilation(c)
        assert np.linalg.norm(p @ p - p) < 1e-8
        assert np.linalg.norm(p - p.conj().T) < 1e-10


def test_exact_2x2_lower_tolerance():
    t1 = gen_random("ginibre", 2, 3)
    reps = bounds.check_norm_sandwich(t1, 0.5, seed=1)
    lower = reps[0]
    assert lower.cls == "lower"
    assert lower.tol == bounds.TOL["lower_exact"]  # 2x2 argument is exact


def test_effort_presets():
    assert bounds.effort_preset("fast") == FAST
    assert bounds.effort_preset("default") == DEFAULT
    with pytest.raises(ParamOutOfRange):
        bounds.effort_preset("turbo")


def test_radius_gap_grid_is_deterministic():
    grid1 = bounds.default_lam_grid(4)
    grid2 = bounds.default_lam_grid(4)
    assert grid1 == grid2
    assert len(grid1) == 10
    t = gen_random("ginibre", 3, 2)
    reps = bounds.check_radius_gap(t, 0.6, seed=4)
    assert len(reps) == 10
    assert all(r.passed for r in reps)
