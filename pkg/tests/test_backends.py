"""Equivalence of the compiled kernels and the pure-numpy fallback.

The two backends follow the same sampling contract but use different
trig/complex arithmetic, so values agree to close tolerance rather than
bitwise; the Monte-Carlo argmax index must agree exactly for the 2x2
closed-form path used by cloud replay.
"""

import numpy as np
import pytest

from qwrange import _kernels_py, backend
from qwrange.core import gen_random, rng_stream

compiled = pytest.importorskip("qwrange._kernels")


def _rows(n, k, seed=123):
    return rng_stream(seed, 0xEE).random((k, backend.row_width(n)))


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("q", [0.0, 0.4, 0.8, 1.0])
def test_pair_values_agree(n, q):
    if n == 2 and q == 0.0:
        q = 0.05  # q = 0 with n = 2 exercised separately below
    t = gen_random("ginibre", n, n)
    u = _rows(n, 500)
    va = compiled.pair_values(t, q, u)
    vb = _kernels_py.pair_values(t, q, u)
    assert np.max(np.abs(va - vb)) < 1e-9


def test_pair_values_agree_q0_2x2():
    t = gen_random("ginibre", 2, 7)
    u = _rows(2, 500)
    va = compiled.pair_values(t, 0.0, u)
    vb = _kernels_py.pair_values(t, 0.0, u)
    assert np.max(np.abs(va - vb)) < 1e-9


@pytest.mark.parametrize("n", [2, 3, 5])
def test_pair_max_agrees(n):
    t = gen_random("ginibre", n, 2 * n)
    u = _rows(n, 4000)
    va, ia = compiled.pair_max(t, 0.6, u)
    vb, ib = _kernels_py.pair_max(t, 0.6, u)
    assert ia == ib
    assert va == pytest.approx(vb, abs=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ascent_agrees(n):
    t = gen_random("ginibre", n, n + 9)
    x0 = np.arange(1, n + 1).astype(complex)
    x0 /= np.linalg.norm(x0)
    xa, ga, ita = compiled.ascent(t, 0.7, x0, 300, 1e-12)
    xb, gb, itb = _kernels_py.ascent(t, 0.7, x0, 300, 1e-12)
    # iteration counts may differ slightly (different rounding paths);
    # the attained values must match tightly.
    assert ga == pytest.approx(gb, abs=1e-9)


def test_reconstruct_matches_sampled_value():
    for n in (2, 3):
        t = gen_random("ginibre", n, 31 + n)
        u = _rows(n, 64)
        vals = backend.pair_values(t, 0.55, u)
        for idx in (0, 13, 63):
            x, y = backend.reconstruct_pair(t, 0.55, u[idx])
            assert abs(np.linalg.norm(x) - 1) < 1e-12
            assert abs(np.linalg.norm(y) - 1) < 1e-12
            assert abs(abs(np.sum(x * np.conj(y))) - 0.55) < 1e-12
            v = np.sum((t @ x) * np.conj(y))
            assert abs(v - vals[idx]) < 1e-9


def test_row_width_contract():
    assert backend.row_width(2) == 3
    for n in (3, 4, 7):
        assert backend.row_width(n) == 4 * n + 1


def test_backend_is_compiled_here():
    # the build step must have produced the extension in this repo
    assert backend.BACKEND == "compiled"
