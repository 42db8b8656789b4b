# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: admissible-pair sampling scan and sphere ascent.

Semantics mirror ``_kernels_py`` exactly; see that module's docstring for
the shared sampling recipe.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, log1p, sin, sqrt

cdef extern from "math.h" nogil:
    void sincos(double x, double* s, double* c)

cnp.import_array()

cdef double TWO_PI = 6.283185307179586476925286766559
cdef int MAX_DIM = 64

MAX_DIM_PY = MAX_DIM


cdef inline double _cabs2(double complex v) noexcept nogil:
    return v.real * v.real + v.imag * v.imag


cdef double HALF_PI = 1.5707963267948966192313216916398


cdef inline void _usincos(double u, double* s, double* c) noexcept nogil:
    # sin and cos of 2*pi*u for u in [0, 1), via quadrant reduction and
    # Taylor series on [-pi/4, pi/4].  Absolute error below 1e-12, an order
    # of magnitude under the certification slack, at under half the cost of
    # the libm call for full-range arguments.
    cdef double t = 4.0 * u
    cdef long k = <long>(t + 0.5)
    cdef double r = (t - k) * HALF_PI
    cdef double r2 = r * r
    cdef double ps = r * (1.0 + r2 * (-1.6666666666666666e-1
                    + r2 * (8.3333333333333332e-3
                    + r2 * (-1.9841269841269841e-4
                    + r2 * (2.7557319223985893e-6
                    + r2 * (-2.5052108385441720e-8))))))
    cdef double pc = 1.0 + r2 * (-0.5
                    + r2 * (4.1666666666666664e-2
                    + r2 * (-1.3888888888888889e-3
                    + r2 * (2.4801587301587302e-5
                    + r2 * (-2.7557319223985888e-7
                    + r2 * (2.0876756987868099e-9))))))
    # branchless quadrant selection: swap for odd quadrants, then fix signs
    cdef long m = k & 3
    cdef double sw = <double>(m & 1)
    cdef double sv = ps + (pc - ps) * sw
    cdef double cv = pc + (ps - pc) * sw
    s[0] = sv * (1.0 - 2.0 * <double>((m >> 1) & 1))
    c[0] = cv * (1.0 - 2.0 * <double>(((m + 1) >> 1) & 1))


cdef inline void _decode_complex(const double* u, int n, double complex* out) noexcept nogil:
    # 2n uniforms -> n complex Gaussians via Box-Muller.
    cdef int j
    cdef double r, s, c
    for j in range(n):
        r = sqrt(-2.0 * log1p(-u[2 * j]))
        sincos(TWO_PI * u[2 * j + 1], &s, &c)
        out[j] = r * c + 1j * (r * s)


cdef inline void _fallback_perp(const double complex* x, int n, int start,
                                double complex* w) noexcept nogil:
    # First basis vector (cyclic from `start`) with |x_j|^2 < 1/2,
    # orthogonalized against x and normalized.
    cdef int j, k, i
    cdef double nw
    for k in range(n):
        j = (start + k) % n
        if _cabs2(x[j]) < 0.5:
            for i in range(n):
                w[i] = -(x[j].real - 1j * x[j].imag) * x[i]
            w[j] = w[j] + 1.0
            nw = 0.0
            for i in range(n):
                nw += _cabs2(w[i])
            nw = sqrt(nw)
            for i in range(n):
                w[i] = w[i] / nw
            return


cdef inline double complex _point2(double complex t00, double complex t01,
                                   double complex t10, double complex t11,
                                   double q, double p, const double* u) noexcept nogil:
    # Closed-form n = 2 recipe (see _kernels_py docstring): the sample point
    # is q*m + p*e^{i eta}*c2 with both m and c2 functions of one angle.
    cdef double s1, s2, sd, cd, se, ce, w1
    cdef double complex ed, edc, m, c2
    w1 = u[0]
    s1 = sqrt(w1)
    s2 = sqrt(1.0 - w1)
    _usincos(u[1], &sd, &cd)
    ed = cd + 1j * sd
    edc = cd - 1j * sd
    m = w1 * t00 + (1.0 - w1) * t11 + (s1 * s2) * (t01 * ed + t10 * edc)
    if p == 0.0:
        return q * m
    _usincos(u[2], &se, &ce)
    c2 = ((s1 * s2) * (t11 - t00)
          - ((1.0 - w1) * t01) * ed + (w1 * t10) * edc)
    return q * m + (p * ce + 1j * (p * se)) * c2


cdef double _pair_value(const double complex[:, ::1] T, double q, double p,
                        const double* u, int n, double complex* x,
                        double complex* z, double complex* y,
                        double complex* tx, bint want_point,
                        double complex* point) noexcept nogil:
    cdef int i, j
    cdef double nx, nw, phi
    cdef double complex ip, acc, ph

    _decode_complex(u, n, x)
    nx = 0.0
    for i in range(n):
        nx += _cabs2(x[i])
    nx = sqrt(nx)
    if nx < 1e-300:
        for i in range(n):
            x[i] = 0.0
        x[0] = 1.0
    else:
        for i in range(n):
            x[i] = x[i] / nx

    if p == 0.0:
        for i in range(n):
            y[i] = q * x[i]
    else:
        _decode_complex(u + 2 * n, n, z)
        ip = 0.0
        for i in range(n):
            ip += z[i] * (x[i].real - 1j * x[i].imag)
        nw = 0.0
        for i in range(n):
            z[i] = z[i] - ip * x[i]
            nw += _cabs2(z[i])
        nw = sqrt(nw)
        if nw < 1e-12:
            _fallback_perp(x, n, 0, z)
        else:
            for i in range(n):
                z[i] = z[i] / nw
        phi = TWO_PI * u[4 * n]
        ph = p * (cos(phi) + 1j * sin(phi))
        for i in range(n):
            y[i] = q * x[i] + ph * z[i]

    acc = 0.0
    for i in range(n):
        tx[i] = 0.0
        for j in range(n):
            tx[i] = tx[i] + T[i, j] * x[j]
        acc += tx[i] * (y[i].real - 1j * y[i].imag)
    if want_point:
        point[0] = acc
    return sqrt(_cabs2(acc))


def pair_max(double complex[:, ::1] T, double q, double[:, ::1] u):
    """Max |<T x, y>| over the sampled rows; returns (best, first argmax)."""
    cdef int n = T.shape[0]
    cdef Py_ssize_t m = u.shape[0]
    if n > MAX_DIM:
        raise ValueError("dimension above kernel limit")
    cdef double p = sqrt(max(0.0, 1.0 - q * q))
    if n == 1 and p != 0.0:
        raise ValueError("no admissible pair in dimension 1 for q < 1")
    if u.shape[1] != (3 if n == 2 else 4 * n + 1):
        raise ValueError("sample row width does not match dimension")
    cdef double complex x[64]
    cdef double complex z[64]
    cdef double complex y[64]
    cdef double complex tx[64]
    cdef double complex pt, t00, t01, t10, t11
    cdef double best = -1.0, v
    cdef Py_ssize_t i, idx = 0
    if n == 2:
        t00 = T[0, 0]
        t01 = T[0, 1]
        t10 = T[1, 0]
        t11 = T[1, 1]
        with nogil:
            for i in range(m):
                pt = _point2(t00, t01, t10, t11, q, p, &u[i, 0])
                # sqrt per sample keeps tie-breaking identical to the fallback
                v = sqrt(_cabs2(pt))
                if v > best:
                    best = v
                    idx = i
        return best, idx
    with nogil:
        for i in range(m):
            v = _pair_value(T, q, p, &u[i, 0], n, x, z, y, tx, False, &pt)
            if v > best:
                best = v
                idx = i
    return best, idx


def pair_values(double complex[:, ::1] T, double q, double[:, ::1] u):
    """<T x, y> for every sampled row."""
    cdef int n = T.shape[0]
    cdef Py_ssize_t m = u.shape[0]
    if n > MAX_DIM:
        raise ValueError("dimension above kernel limit")
    cdef double p = sqrt(max(0.0, 1.0 - q * q))
    if n == 1 and p != 0.0:
        raise ValueError("no admissible pair in dimension 1 for q < 1")
    if u.shape[1] != (3 if n == 2 else 4 * n + 1):
        raise ValueError("sample row width does not match dimension")
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double complex x[64]
    cdef double complex z[64]
    cdef double complex y[64]
    cdef double complex tx[64]
    cdef double complex pt, t00, t01, t10, t11
    cdef Py_ssize_t i
    if n == 2:
        t00 = T[0, 0]
        t01 = T[0, 1]
        t10 = T[1, 0]
        t11 = T[1, 1]
        with nogil:
            for i in range(m):
                ov[i] = _point2(t00, t01, t10, t11, q, p, &u[i, 0])
        return out
    with nogil:
        for i in range(m):
            _pair_value(T, q, p, &u[i, 0], n, x, z, y, tx, True, &pt)
            ov[i] = pt
    return out


def reconstruct_pair(T, double q, row):
    """Re-derive the admissible pair encoded by one uniform row."""
    from . import _kernels_py
    return _kernels_py.reconstruct_pair(np.asarray(T, dtype=np.complex128), q,
                                        np.asarray(row, dtype=np.float64))


cdef double _eval_g(const double complex[:, ::1] T, double q, double p, int n,
                    const double complex* x, double complex* tx,
                    double complex* m_out, double* g2_out) noexcept nogil:
    cdef int i, j
    cdef double complex m = 0.0
    cdef double ntx = 0.0, res2, g2
    for i in range(n):
        tx[i] = 0.0
        for j in range(n):
            tx[i] = tx[i] + T[i, j] * x[j]
        m += tx[i] * (x[i].real - 1j * x[i].imag)
        ntx += _cabs2(tx[i])
    res2 = ntx - _cabs2(m)
    g2 = sqrt(res2) if res2 > 0.0 else 0.0
    m_out[0] = m
    g2_out[0] = g2
    return q * sqrt(_cabs2(m)) + p * g2


def ascent(double complex[:, ::1] T, double q, x0, int max_iter, double tol):
    """Projected gradient ascent of the pair objective (see _kernels_py)."""
    cdef int n = T.shape[0]
    if n > MAX_DIM:
        raise ValueError("dimension above kernel limit")
    cdef double p = sqrt(max(0.0, 1.0 - q * q))
    x0c = np.ascontiguousarray(np.asarray(x0, dtype=np.complex128))
    cdef double complex[::1] x0v = x0c
    cdef double complex x[64]
    cdef double complex xn[64]
    cdef double complex best_x[64]
    cdef double complex tx[64]
    cdef double complex txn[64]
    cdef double complex th[64]
    cdef double complex tht[64]
    cdef double complex grad[64]
    cdef double complex kick[64]
    cdef double complex m, m_new, phase, ipg, gt
    cdef double sT = 0.0, eps, g, g2, g_new, g2_new, best_g, step, gn, nx, rip
    cdef int i, j, it, iters = 0
    cdef bint accepted

    for i in range(n):
        for j in range(n):
            sT += _cabs2(T[i, j])
    sT = sqrt(sT)
    if sT < 1e-300:
        sT = 1e-300
    eps = 1e-14 * sT

    nx = 0.0
    for i in range(n):
        x[i] = x0v[i]
        nx += _cabs2(x[i])
    nx = sqrt(nx)
    for i in range(n):
        x[i] = x[i] / nx

    g = _eval_g(T, q, p, n, x, tx, &m, &g2)
    best_g = g
    for i in range(n):
        best_x[i] = x[i]
    step = 0.3

    with nogil:
        for it in range(max_iter):
            iters += 1
            for i in range(n):
                th[i] = 0.0
                tht[i] = 0.0
                for j in range(n):
                    # conj-transpose matvecs: th = T^H x, tht = T^H (T x)
                    gt = T[j, i].real - 1j * T[j, i].imag
                    th[i] = th[i] + gt * x[j]
                    tht[i] = tht[i] + gt * tx[j]
            if sqrt(_cabs2(m)) > eps:
                phase = m / sqrt(_cabs2(m))
            else:
                phase = 1.0
            for i in range(n):
                grad[i] = q * ((phase.real - 1j * phase.imag) * tx[i] + phase * th[i])
            if p > 0.0:
                if g2 > eps:
                    for i in range(n):
                        grad[i] = grad[i] + p * (tht[i]
                                                 - (m.real - 1j * m.imag) * tx[i]
                                                 - m * th[i]) / g2
                else:
                    _fallback_perp(x, n, it % n, kick)
                    for i in range(n):
                        grad[i] = grad[i] + (p * sT) * kick[i]
            ipg = 0.0
            for i in range(n):
                ipg += grad[i] * (x[i].real - 1j * x[i].imag)
            rip = ipg.real
            gn = 0.0
            for i in range(n):
                grad[i] = grad[i] - rip * x[i]
                gn += _cabs2(grad[i])
            gn = sqrt(gn)
            if gn <= tol * (sT if sT > 1.0 else 1.0):
                break
            accepted = False
            while step >= 1e-14:
                nx = 0.0
                for i in range(n):
                    xn[i] = x[i] + (step / gn) * grad[i]
                    nx += _cabs2(xn[i])
                nx = sqrt(nx)
                for i in range(n):
                    xn[i] = xn[i] / nx
                g_new = _eval_g(T, q, p, n, xn, txn, &m_new, &g2_new)
                if g_new > g:
                    for i in range(n):
                        x[i] = xn[i]
                        tx[i] = txn[i]
                    g = g_new
                    m = m_new
                    g2 = g2_new
                    accepted = True
                    break
                step *= 0.5
            if not accepted:
                break
            step = step * 1.5
            if step > 1.0:
                step = 1.0
            if g > best_g:
                best_g = g
                for i in range(n):
                    best_x[i] = x[i]

    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    for i in range(n):
        ov[i] = best_x[i]
    return out, best_g, iters
