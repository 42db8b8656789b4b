"""Tests for the dense linear-algebra substrate."""

import numpy as np
import pytest

from qwrange.core import (ENSEMBLE_KINDS, as_matrix, block2x2, direct_sum,
                          gen_random, herm_eig, modulus_power,
                          psd_sqrt_clamped01, spectral_norm)
from qwrange.errors import (BadDimension, DimensionMismatch, NotHermitian,
                            SpectrumOutOfRange)


def test_as_matrix_validates():
    m = as_matrix([[1, 2], [3, 4]], square=True)
    assert m.dtype == np.complex128
    with pytest.raises(DimensionMismatch):
        as_matrix([1, 2, 3])
    with pytest.raises(DimensionMismatch):
        as_matrix(np.zeros((2, 3)), square=True)
    with pytest.raises(DimensionMismatch):
        as_matrix(np.zeros((0, 2)))
    with pytest.raises(ValueError):
        as_matrix([[np.nan, 0], [0, 1]])
    with pytest.raises(ValueError):
        as_matrix([[np.inf * 1j, 0], [0, 1]])


def test_as_matrix_accepts_noncontiguous():
    g = gen_random("ginibre", 4, 3)
    v = as_matrix(g.conj().T)  # a view; must not fail
    assert np.allclose(v, g.conj().T)


def test_herm_eig_basic():
    h = gen_random("hermitian", 5, 0)
    eig = herm_eig(h)
    assert np.all(np.diff(eig.eigenvalues) >= 0)
    rec = (eig.eigenvectors * eig.eigenvalues) @ eig.eigenvectors.conj().T
    assert np.linalg.norm(rec - h) < 1e-12
    with pytest.raises(NotHermitian):
        herm_eig(gen_random("ginibre", 4, 1))


def test_spectral_norm_matches_svd():
    for seed in range(5):
        g = gen_random("ginibre", 4, seed)
        assert spectral_norm(g) == pytest.approx(
            np.linalg.svd(g, compute_uv=False)[0], abs=1e-13)
    assert spectral_norm(np.zeros((3, 3))) == 0.0


def test_modulus_power():
    s = gen_random("ginibre", 4, 7)
    m2 = modulus_power(s, 2.0)
    assert np.linalg.norm(m2 - s.conj().T @ s) < 1e-10
    m1 = modulus_power(s, 1.0)
    assert np.linalg.norm(m1 @ m1 - s.conj().T @ s) < 1e-10
    assert np.linalg.norm(modulus_power(s, 0.0) - np.eye(4)) < 1e-10
    with pytest.raises(ValueError):
        modulus_power(s, -1.0)


def test_psd_sqrt_clamped01():
    c = gen_random("contraction01", 5, 3)
    d = psd_sqrt_clamped01(c)
    assert np.linalg.norm(d @ d - (c - c @ c)) < 1e-10
    with pytest.raises(SpectrumOutOfRange):
        psd_sqrt_clamped01(2.0 * np.eye(3))


def test_block_assembly():
    a = np.ones((2, 2))
    b = np.zeros((2, 3))
    c = np.zeros((3, 2))
    d = np.eye(3)
    m = block2x2(a, b, c, d)
    assert m.shape == (5, 5)
    with pytest.raises(DimensionMismatch):
        block2x2(a, np.zeros((3, 3)), c, d)
    s = direct_sum([a, d])
    assert s.shape == (5, 5)
    assert np.allclose(s[:2, :2], a) and np.allclose(s[2:, 2:], d)


@pytest.mark.parametrize("kind", ENSEMBLE_KINDS)
def test_gen_random_structure(kind):
    for seed in range(4):
        m = gen_random(kind, 4, seed)
        assert m.shape == (4, 4)
        if kind == "hermitian":
            assert np.linalg.norm(m - m.conj().T) < 1e-13
        elif kind == "unitary":
            assert np.linalg.norm(m.conj().T @ m - np.eye(4)) < 1e-12
        elif kind == "psd":
            w = np.linalg.eigvalsh((m + m.conj().T) / 2)
            assert np.linalg.norm(m - m.conj().T) < 1e-13
            assert w.min() >= -1e-13
        elif kind == "contraction01":
            w = np.linalg.eigvalsh((m + m.conj().T) / 2)
            assert -1e-13 <= w.min() and w.max() <= 1 + 1e-13
        elif kind == "projection":
            assert np.linalg.norm(m @ m - m) < 1e-12
            assert np.linalg.norm(m - m.conj().T) < 1e-13
        elif kind == "nilpotent_sq_zero":
            assert np.linalg.norm(m @ m) < 1e-12


def test_gen_random_deterministic():
    a = gen_random("ginibre", 5, 42)
    b = gen_random("ginibre", 5, 42)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, gen_random("ginibre", 5, 43))


def test_gen_random_rejects():
    with pytest.raises(ValueError):
        gen_random("unknown", 3, 0)
    with pytest.raises(BadDimension):
        gen_random("nilpotent_sq_zero", 1, 0)
