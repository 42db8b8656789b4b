"""Dense complex linear algebra substrate.

Matrices are plain ``numpy.ndarray`` of dtype complex128.  Everything here is
deterministic: random draws are counter-based (Philox) from an explicit
64-bit seed, so results never depend on call order or global RNG state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadDimension,
    DimensionMismatch,
    EmptyInput,
    NoConvergence,
    NotHermitian,
    SpectrumOutOfRange,
)

__all__ = [
    "HermEig",
    "ENSEMBLE_KINDS",
    "as_matrix",
    "herm_eig",
    "spectral_norm",
    "modulus_power",
    "psd_sqrt_clamped01",
    "block2x2",
    "direct_sum",
    "gen_random",
]

# Clamp window for PSD functional calculus: eigenvalues in
# [-CLAMP_REL * scale, 0) are round-off and snap to 0, anything more
# negative is a misuse of the PSD routines.
CLAMP_REL = 1e-10

_U64 = np.uint64(0xFFFFFFFFFFFFFFFF)

# Stream tags keep the Philox streams of unrelated consumers disjoint even
# when they share a user seed.
_KIND_TAGS = {
    "ginibre": 0x67696E69,
    "hermitian": 0x6865726D,
    "unitary": 0x756E6974,
    "psd": 0x70736400,
    "contraction01": 0x636F6E74,
    "projection": 0x70726F6A,
    "nilpotent_sq_zero": 0x6E696C70,
}

ENSEMBLE_KINDS = tuple(_KIND_TAGS)


def rng_stream(seed: int, tag: int) -> np.random.Generator:
    """Counter-based generator for (seed, tag); independent across tags."""
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(tag)])
    return np.random.Generator(np.random.Philox(key=key))


def as_matrix(a, square: bool = False) -> np.ndarray:
    """Validate and convert to a complex128 matrix (finite entries only)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got ndim={m.ndim}")
    if m.shape[0] == 0 or m.shape[1] == 0:
        raise DimensionMismatch("empty matrix")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {m.shape}")
    return m


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # columns orthonormal


def herm_eig(h, tol: float = 1e-10) -> HermEig:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitian when the Hermiticity residual exceeds ``tol``
    relative to the Frobenius norm.
    """
    h = as_matrix(h, square=True)
    scale = np.linalg.norm(h)
    if np.linalg.norm(h - h.conj().T) > tol * max(scale, 1e-300):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return HermEig(eigenvalues=w, eigenvectors=v)


def spectral_norm(a) -> float:
    """Largest singular value."""
    a = as_matrix(a)
    if not a.any():
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def _clamped_psd_eigs(h: np.ndarray, w: np.ndarray) -> np.ndarray:
    scale = max(float(np.linalg.norm(h)), 1e-300)
    floor = -CLAMP_REL * scale
    if np.any(w < floor):
        raise SpectrumOutOfRange(
            f"eigenvalue {w.min():.3e} below round-off window {floor:.3e}"
        )
    return np.maximum(w, 0.0)


def modulus_power(s, power: float) -> np.ndarray:
    """|S|^power via functional calculus on the Gram matrix S*S."""
    s = as_matrix(s, square=True)
    if power < 0:
        raise ValueError("power must be >= 0")
    gram = s.conj().T @ s
    gram = (gram + gram.conj().T) / 2
    eig = herm_eig(gram, tol=1e-8)
    lam = _clamped_psd_eigs(gram, eig.eigenvalues)
    v = eig.eigenvectors
    return (v * lam ** (power / 2.0)) @ v.conj().T


def psd_sqrt_clamped01(t, tol: float = 1e-8) -> np.ndarray:
    """sqrt(T - T^2) for Hermitian T with spectrum in [0, 1] (up to tol)."""
    t = as_matrix(t, square=True)
    eig = herm_eig(t, tol=max(tol, 1e-10))
    w = eig.eigenvalues
    if w.min() < -tol or w.max() > 1.0 + tol:
        raise SpectrumOutOfRange(
            f"spectrum [{w.min():.3e}, {w.max():.3e}] outside [-tol, 1+tol]"
        )
    w = np.clip(w, 0.0, 1.0)
    v = eig.eigenvectors
    return (v * np.sqrt(w * (1.0 - w))) @ v.conj().T


def block2x2(a, b, c, d) -> np.ndarray:
    """Assemble [[A, B], [C, D]] with conformality checks."""
    a, b, c, d = (as_matrix(x) for x in (a, b, c, d))
    if a.shape[0] != b.shape[0] or c.shape[0] != d.shape[0]:
        raise DimensionMismatch("row blocks do not conform")
    if a.shape[1] != c.shape[1] or b.shape[1] != d.shape[1]:
        raise DimensionMismatch("column blocks do not conform")
    return np.block([[a, b], [c, d]])


def direct_sum(blocks) -> np.ndarray:
    """Block-diagonal assembly of square blocks."""
    blocks = [as_matrix(b, square=True) for b in blocks]
    if not blocks:
        raise EmptyInput("direct_sum of no blocks")
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.complex128)
    k = 0
    for b in blocks:
        m = b.shape[0]
        out[k : k + m, k : k + m] = b
        k += m
    return out


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    g = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return g / np.sqrt(2.0)


def _haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    # QR with phase fix so the distribution is Haar (Mezzadri's recipe).
    q, r = np.linalg.qr(_ginibre(rng, n, n))
    d = np.diag(r)
    return q * (d / np.abs(d))


def gen_random(kind: str, n: int, seed: int) -> np.ndarray:
    """Seeded draw from a structured matrix ensemble.

    Deterministic for fixed (kind, n, seed).  Structural guarantees:
    hermitian H = H*; unitary U*U = I; psd Hermitian nonnegative;
    contraction01 Hermitian with spectrum in [0, 1]; projection
    P = P^2 = P*; nilpotent_sq_zero T^2 = 0.
    """
    if kind not in _KIND_TAGS:
        raise ValueError(f"unknown ensemble kind {kind!r}")
    if n < 1 or (kind == "nilpotent_sq_zero" and n < 2):
        raise BadDimension(f"n={n} too small for kind {kind!r}")
    rng = rng_stream(seed, _KIND_TAGS[kind])
    if kind == "ginibre":
        return _ginibre(rng, n, n)
    if kind == "hermitian":
        g = _ginibre(rng, n, n)
        return (g + g.conj().T) / 2
    if kind == "unitary":
        return _haar_unitary(rng, n)
    if kind == "psd":
        g = _ginibre(rng, n, n)
        return (g @ g.conj().T) / n
    if kind == "contraction01":
        v = _haar_unitary(rng, n)
        lam = rng.random(n)
        return (v * lam) @ v.conj().T
    if kind == "projection":
        v = _haar_unitary(rng, n)
        rank = int(rng.integers(1, n + 1)) if n > 1 else 1
        lam = np.zeros(n)
        lam[:rank] = 1.0
        return (v * lam) @ v.conj().T
    # nilpotent_sq_zero: U [[0, B], [0, 0]] U* squares to zero exactly.
    m = n // 2
    u = _haar_unitary(rng, n)
    t = np.zeros((n, n), dtype=np.complex128)
    t[:m, m:] = _ginibre(rng, m, n - m)
    return u @ t @ u.conj().T
