"""Pure-numpy implementations of the hot kernels.

The compiled extension ``_kernels`` implements the same three entry points
with identical sampling semantics; :mod:`qwrange.backend` picks whichever is
available at import time.

Sampling recipe (shared contract between backends)
--------------------------------------------------
For general n, each admissible-pair sample consumes ``4n + 1`` uniforms
from one row of ``u`` (values in [0, 1), produced upstream from a
counter-based stream):

* ``u[0:2n]``    -> 2n Gaussians via Box-Muller, the raw ``x`` vector
  (pair ``(u[2j], u[2j+1])`` gives Re/Im of entry ``j``),
* ``u[2n:4n]``   -> raw ``z`` vector, same encoding,
* ``u[4n]``      -> phase ``phi`` in [0, 2*pi).

Then ``x = x_raw / ||x_raw||``, ``z`` is ``z_raw`` orthogonalized against
``x`` and normalized (deterministic basis fallback if degenerate), and
``y = q*x + sqrt(1-q^2) * exp(i*phi) * z``.  The sample value is
``|<T x, y>|`` with the inner product linear in the first slot.

For n = 2 the same value distribution is sampled in closed form from 3
uniforms ``(u1, ud, ue)``.  With ``x = (s1 e^{ia}, s2 e^{ib})`` uniform on
the sphere and ``z = e^{ic} (-conj(x2), conj(x1))`` the sample point is

    q m(d) + p e^{i eta} c2(d),    d = b - a,  eta = (a + b) - (c + phi),

where m and c2 depend on the phases only through d, and (d, eta) is an
independent uniform pair on [0, 2 pi)^2.  The n = 2 row therefore encodes
``|x1|^2 = u1``, ``d = 2 pi ud``, ``eta = 2 pi ue`` and reconstructs the
representative pair with ``a = 0`` and combined y-phase ``d - eta``.
"""

from __future__ import annotations

import numpy as np

MAX_DIM = 64


def row_width(n: int) -> int:
    """Uniforms consumed per sample in dimension n."""
    return 3 if n == 2 else 4 * n + 1


def _box_muller(u1: np.ndarray, u2: np.ndarray):
    r = np.sqrt(-2.0 * np.log1p(-u1))
    ang = 2.0 * np.pi * u2
    return r * np.cos(ang), r * np.sin(ang)


def _decode_vectors(u: np.ndarray, n: int):
    """Raw complex (m, n) vectors for x and z plus the phase column."""
    re_x, im_x = _box_muller(u[:, 0 : 2 * n : 2], u[:, 1 : 2 * n : 2])
    re_z, im_z = _box_muller(u[:, 2 * n : 4 * n : 2], u[:, 2 * n + 1 : 4 * n : 2])
    phi = 2.0 * np.pi * u[:, 4 * n]
    return re_x + 1j * im_x, re_z + 1j * im_z, phi


def _orthonormal_fallback(x: np.ndarray) -> np.ndarray:
    """First basis vector with |x_j|^2 < 1/2, orthogonalized against x."""
    n = x.shape[0]
    for j in range(n):
        if np.abs(x[j]) ** 2 < 0.5:
            w = -np.conj(x[j]) * x
            w[j] += 1.0
            return w / np.linalg.norm(w)
    raise AssertionError("unreachable for n >= 2")


def _pairs2_from_rows(q: float, p: float, u: np.ndarray):
    s1 = np.sqrt(u[:, 0])
    s2 = np.sqrt(1.0 - u[:, 0])
    x = np.empty((u.shape[0], 2), dtype=np.complex128)
    x[:, 0] = s1
    x[:, 1] = s2 * np.exp(2j * np.pi * u[:, 1])
    if p == 0.0:
        return x, q * x
    z0 = np.empty_like(x)
    z0[:, 0] = -np.conj(x[:, 1])
    z0[:, 1] = np.conj(x[:, 0])
    psi = 2.0 * np.pi * (u[:, 1] - u[:, 2])
    y = q * x + (p * np.exp(1j * psi))[:, None] * z0
    return x, y


def _pairs_from_rows(T: np.ndarray, q: float, u: np.ndarray):
    """(x, y) batches for every row of u; shared by scan and reconstruct."""
    n = T.shape[0]
    p = np.sqrt(max(0.0, 1.0 - q * q))
    if u.shape[1] != row_width(n):
        raise ValueError("sample row width does not match dimension")
    if n == 2:
        return _pairs2_from_rows(q, p, u)
    xr, zr, phi = _decode_vectors(u, n)

    nx = np.sqrt(np.sum(xr.real**2 + xr.imag**2, axis=1))
    bad = nx < 1e-300
    if np.any(bad):
        xr[bad] = 0.0
        xr[bad, 0] = 1.0
        nx[bad] = 1.0
    x = xr / nx[:, None]

    if n == 1 or p == 0.0:
        y = q * x
        if p != 0.0:  # n == 1 with q < 1 is rejected upstream
            raise ValueError("no admissible pair in dimension 1 for q < 1")
        return x, y

    ip = np.sum(zr * np.conj(x), axis=1)
    w = zr - ip[:, None] * x
    nw = np.sqrt(np.sum(w.real**2 + w.imag**2, axis=1))
    deg = nw < 1e-12
    if np.any(deg):
        for i in np.nonzero(deg)[0]:
            w[i] = _orthonormal_fallback(x[i])
            nw[i] = 1.0
    z = w / nw[:, None]
    y = q * x + (p * np.exp(1j * phi))[:, None] * z
    return x, y


def pair_max(T: np.ndarray, q: float, u: np.ndarray):
    """Max |<T x, y>| over the sampled rows; returns (best, first argmax)."""
    x, y = _pairs_from_rows(T, q, u)
    tx = np.einsum("ij,mj->mi", T, x)
    vals = np.abs(np.sum(tx * np.conj(y), axis=1))
    idx = int(np.argmax(vals))
    return float(vals[idx]), idx


def pair_values(T: np.ndarray, q: float, u: np.ndarray) -> np.ndarray:
    """<T x, y> for every sampled row."""
    x, y = _pairs_from_rows(T, q, u)
    tx = np.einsum("ij,mj->mi", T, x)
    return np.sum(tx * np.conj(y), axis=1)


def reconstruct_pair(T: np.ndarray, q: float, row: np.ndarray):
    """Re-derive the admissible pair encoded by one uniform row."""
    x, y = _pairs_from_rows(T, q, row[None, :])
    return x[0], y[0]


def _eval_g(T: np.ndarray, q: float, p: float, x: np.ndarray):
    tx = T @ x
    m = complex(np.sum(tx * np.conj(x)))
    res2 = float(np.sum(tx.real**2 + tx.imag**2)) - abs(m) ** 2
    g2 = np.sqrt(res2) if res2 > 0.0 else 0.0
    return q * abs(m) + p * g2, m, tx, g2


def ascent(T: np.ndarray, q: float, x0: np.ndarray, max_iter: int, tol: float):
    """Projected gradient ascent of the admissible-pair objective.

    Maximizes g(x) = q|<Tx,x>| + sqrt(1-q^2) ||Tx - <Tx,x>x|| over the unit
    sphere, with backtracking on the step and a deterministic tangent kick at
    the nonsmooth points.  Returns (x_best, g_best, iterations).
    """
    n = T.shape[0]
    p = np.sqrt(max(0.0, 1.0 - q * q))
    Th = T.conj().T
    sT = max(float(np.linalg.norm(T)), 1e-300)
    eps = 1e-14 * sT

    x = np.asarray(x0, dtype=np.complex128).copy()
    x /= np.linalg.norm(x)
    g, m, tx, g2 = _eval_g(T, q, p, x)
    best_g, best_x = g, x.copy()
    step = 0.3
    iters = 0
    for it in range(max_iter):
        iters += 1
        th = Th @ x
        am = abs(m)
        phase = m / am if am > eps else 1.0 + 0.0j
        grad = q * (np.conj(phase) * tx + phase * th)
        if p > 0.0:
            if g2 > eps:
                grad = grad + p * (Th @ tx - np.conj(m) * tx - m * th) / g2
            else:
                # kink of the residual term: deterministic tangent kick
                kick = _orthonormal_fallback_shifted(x, it % n)
                grad = grad + (p * sT) * kick
        grad = grad - float(np.real(np.sum(grad * np.conj(x)))) * x
        gn = float(np.linalg.norm(grad))
        if gn <= tol * max(sT, 1.0):
            break
        d = grad / gn
        accepted = False
        while step >= 1e-14:
            xn = x + step * d
            xn /= np.linalg.norm(xn)
            g_new, m_new, tx_new, g2_new = _eval_g(T, q, p, xn)
            if g_new > g:
                x, g, m, tx, g2 = xn, g_new, m_new, tx_new, g2_new
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        step = min(step * 1.5, 1.0)
        if g > best_g:
            best_g, best_x = g, x.copy()
    return best_x, float(best_g), iters


def _orthonormal_fallback_shifted(x: np.ndarray, start: int) -> np.ndarray:
    n = x.shape[0]
    for k in range(n):
        j = (start + k) % n
        if np.abs(x[j]) ** 2 < 0.5:
            w = -np.conj(x[j]) * x
            w[j] += 1.0
            return w / np.linalg.norm(w)
    raise AssertionError("unreachable for n >= 2")
