"""q-numerical radius estimation.

The q-numerical range of a square complex matrix T is the set of values
<T x, y> over unit vectors x, y with <x, y> = q (inner product linear in
the first slot).  Its radius w_q(T) = sup |<T x, y>| is computed here four
ways, each with a different soundness story:

* ``estimate_wq``: multi-start projected gradient ascent.  Every value is
  attained by a recorded admissible pair, so it is a certified lower bound.
* ``sample_wq``: pure Monte-Carlo scan, also a certified lower bound.
* ``wq_2x2_exact``: closed form for 2x2 input via a canonical form, used
  as the oracle everywhere a 2x2 argument appears.
* ``classical_radius``: the q = 1 radius through the support function of
  the numerical range, with a branch-and-bound on the rotation angle.

The scalar q is real in [0, 1]; a complex q is reduced to its modulus,
which leaves w_q unchanged (multiplying y by a unit scalar moves any
admissible pair for q to one for |q|).
"""

from __future__ import annotations

import cmath
import heapq
from dataclasses import dataclass

import numpy as np

from . import backend
from .core import as_matrix, herm_eig, rng_stream
from .errors import BadDimension, DimensionTooSmall, NotTwoByTwo, ParamOutOfRange

_TAG_SAMPLE = 0xA1
_TAG_STARTS = 0xA2
_TAG_CLOUD = 0xA3

_CHUNK_ROWS = 1 << 18


@dataclass(frozen=True)
class QValue:
    """A q parameter, reduced to a real number in [0, 1]."""

    q: float

    def __post_init__(self):
        if not np.isfinite(self.q) or self.q < 0.0 or self.q > 1.0:
            raise ParamOutOfRange(f"q must lie in [0, 1], got {self.q}")

    @classmethod
    def from_scalar(cls, z) -> "QValue":
        """Accept any scalar with |z| <= 1; the phase is irrelevant."""
        return cls(abs(complex(z)))


def _qf(q) -> float:
    if isinstance(q, QValue):
        return q.q
    return QValue(float(q)).q


def _qv(q) -> QValue:
    return q if isinstance(q, QValue) else QValue(float(q))


@dataclass(frozen=True)
class AdmissiblePair:
    """Unit vectors x, y with <x, y> = q."""

    x: np.ndarray
    y: np.ndarray

    def inner(self) -> complex:
        return complex(np.sum(self.x * np.conj(self.y)))

    def evaluate(self, T: np.ndarray) -> complex:
        """<T x, y> for this pair."""
        return complex(np.sum((T @ self.x) * np.conj(self.y)))


@dataclass(frozen=True)
class RadiusEstimate:
    value: float
    witness: AdmissiblePair
    q: QValue
    method: str
    restarts_used: int
    iterations_used: int


@dataclass(frozen=True)
class Canonical2x2:
    """Unitary reduction of a 2x2 matrix to e^{it} [[gamma, a], [b, gamma]].

    t is a real phase, a >= b >= 0, and gamma is complex: for generic
    input the trace direction and the off-diagonal phase cannot be merged
    into a single factor e^{it}, so the shared diagonal entry keeps its
    own phase.  U holds the conjugating unitary: U* T U recovers the form.
    """

    t: float
    gamma: complex
    a: float
    b: float
    U: np.ndarray

    def assemble(self) -> np.ndarray:
        """The canonical matrix e^{it} [[gamma, a], [b, gamma]]."""
        core = np.array([[self.gamma, self.a], [self.b, self.gamma]],
                        dtype=np.complex128)
        return cmath.exp(1j * self.t) * core


@dataclass(frozen=True)
class RangeCloud:
    points: np.ndarray
    boundary: np.ndarray | None
    q: QValue


def _check_dims(T: np.ndarray, q: float) -> int:
    n = T.shape[0]
    if n == 1 and q < 1.0:
        raise DimensionTooSmall(
            "dimension 1 admits no pair with |<x, y>| = q < 1")
    if n > backend.MAX_DIM:
        raise BadDimension(f"dimension {n} above supported limit")
    return n


def _perp_unit(x: np.ndarray) -> np.ndarray:
    """First standard basis vector with small overlap, orthogonalized."""
    for j in range(x.shape[0]):
        if abs(x[j]) ** 2 < 0.5:
            w = -np.conj(x[j]) * x
            w[j] += 1.0
            return w / np.linalg.norm(w)
    raise AssertionError("unreachable for dimension >= 2")


def objective_witness(T, q, x):
    """Value of the inner maximization at x, with the optimizing y.

    For fixed unit x the best admissible y is found in closed form: with
    m = <T x, x> and residual r = T x - m x, the maximum of |<T x, y>| is
    g(x) = q |m| + sqrt(1 - q^2) ||r||, attained at
    y = q x + sqrt(1 - q^2) * conj(phase(m)) * r / ||r||.
    """
    T = as_matrix(T, square=True)
    qf = _qf(q)
    n = _check_dims(T, qf)
    x = np.asarray(x, dtype=np.complex128).reshape(n)
    x = x / np.linalg.norm(x)
    p = np.sqrt(max(0.0, 1.0 - qf * qf))

    tx = T @ x
    m = complex(np.sum(tx * np.conj(x)))
    r = tx - m * x
    rn = float(np.linalg.norm(r))
    g = qf * abs(m) + p * rn

    if p == 0.0:
        return g, qf * x
    scale = max(float(np.linalg.norm(T)), 1.0)
    phase = m / abs(m) if abs(m) > 1e-14 * scale else 1.0 + 0.0j
    if rn > 1e-14 * scale:
        z = r / rn
    else:
        z = _perp_unit(x)
    y = qf * x + p * np.conj(phase) * z
    return g, y


def objective(T, q, x) -> float:
    """q |<T x, x>| + sqrt(1 - q^2) ||T x - <T x, x> x|| for unit x.

    This equals max |<T x, y>| over admissible y sharing this x, so
    maximizing it over the sphere gives w_q(T).
    """
    g, _ = objective_witness(T, q, x)
    return g


def _structured_starts(T: np.ndarray) -> list[np.ndarray]:
    """Deterministic starts: top singular vector, extreme eigenvectors of
    the Hermitian and skew parts, and of a small family of rotations."""
    n = T.shape[0]
    starts: list[np.ndarray] = []
    _, _, vh = np.linalg.svd(T)
    starts.append(vh[0].conj())
    herm = (T + T.conj().T) / 2.0
    skew = (T - T.conj().T) / 2.0j
    for H in (herm, skew):
        eig = herm_eig(H)
        starts.append(eig.eigenvectors[:, 0])
        starts.append(eig.eigenvectors[:, -1])
    for k in range(8):
        th = np.pi * k / 8.0
        R = cmath.exp(1j * th) * T
        eig = herm_eig((R + R.conj().T) / 2.0)
        starts.append(eig.eigenvectors[:, -1])
    uniq = []
    for s in starts:
        s = np.ascontiguousarray(s, dtype=np.complex128)
        s = s / np.linalg.norm(s)
        uniq.append(s)
    return uniq[: 4 * n + 13]


def estimate_wq(T, q, restarts: int = 32, max_iter: int = 300,
                seed: int = 0, extra_starts=None) -> RadiusEstimate:
    """Best objective value over multi-start sphere ascent.

    Starts are the structured family plus seeded random unit vectors, for
    `restarts` starts in total.  The result is attained at the returned
    witness pair, so it never exceeds w_q(T).  Deterministic in all
    arguments.  `extra_starts` lets a caller seed the search with vectors
    of its own (used to align estimates of unitarily similar matrices).
    """
    T = as_matrix(T, square=True)
    qf = _qf(q)
    n = _check_dims(T, qf)
    if restarts < 1:
        raise ParamOutOfRange("restarts must be >= 1")
    if max_iter < 1:
        raise ParamOutOfRange("max_iter must be >= 1")

    starts: list[np.ndarray] = []
    if extra_starts is not None:
        for s in extra_starts:
            s = np.asarray(s, dtype=np.complex128).reshape(n)
            starts.append(s / np.linalg.norm(s))
    starts.extend(_structured_starts(T))
    n_random = max(restarts - len(starts), max(1, restarts // 4))
    rng = rng_stream(seed, _TAG_STARTS)
    raw = rng.standard_normal((n_random, 2 * n))
    for row in raw:
        v = row[0::2] + 1j * row[1::2]
        starts.append(v / np.linalg.norm(v))

    best_g = -1.0
    best_x = starts[0]
    total_iters = 0
    for s in starts:
        x, g, iters = backend.ascent(T, qf, s, max_iter, 1e-12)
        total_iters += iters
        if g > best_g:
            best_g = g
            best_x = np.asarray(x)

    g, y = objective_witness(T, qf, best_x)
    pair = AdmissiblePair(x=best_x, y=y)
    return RadiusEstimate(value=float(g), witness=pair, q=_qv(q),
                          method="optimize", restarts_used=len(starts),
                          iterations_used=total_iters)


def sample_wq(T, q, n_samples: int, seed: int) -> RadiusEstimate:
    """Maximum |<T x, y>| over n_samples random admissible pairs.

    x is uniform on the unit sphere, y = q x + sqrt(1-q^2) e^{i phi} z
    with z uniform among unit vectors orthogonal to x and phi uniform.
    A pure Monte-Carlo lower bound with the maximizing pair as witness.
    """
    T = as_matrix(T, square=True)
    qf = _qf(q)
    n = _check_dims(T, qf)
    if n_samples < 1:
        raise ParamOutOfRange("n_samples must be >= 1")

    width = backend.row_width(n)
    rng = rng_stream(seed, _TAG_SAMPLE)
    best = -1.0
    best_row = None
    done = 0
    while done < n_samples:
        k = min(_CHUNK_ROWS, n_samples - done)
        u = rng.random((k, width))
        b, i = backend.pair_max(T, qf, u)
        if b > best:
            best = b
            best_row = u[i].copy()
        done += k

    x, y = backend.reconstruct_pair(T, qf, best_row)
    pair = AdmissiblePair(x=x, y=y)
    return RadiusEstimate(value=float(best), witness=pair, q=_qv(q),
                          method="sample", restarts_used=1,
                          iterations_used=n_samples)


def canonical_2x2(T) -> Canonical2x2:
    """Unitary reduction of 2x2 T to e^{it} [[gamma, a], [b, gamma]].

    The trace fixes the shared diagonal entry; the traceless part is
    rotated to zero diagonal by a unitary whose first column makes the
    quadratic form vanish, then the two off-diagonal phases are averaged
    into t by a diagonal phase conjugation, leaving a >= b >= 0.
    """
    T = as_matrix(T, square=True)
    if T.shape[0] != 2:
        raise NotTwoByTwo(f"need a 2x2 matrix, got {T.shape[0]}x{T.shape[0]}")
    scale = max(float(np.linalg.norm(T)), 1.0)
    tau = (T[0, 0] + T[1, 1]) / 2.0
    T0 = T - tau * np.eye(2)
    alpha, beta = T0[0, 0], T0[0, 1]
    delta = T0[1, 0]

    if abs(alpha) <= 1e-15 * scale:
        U1 = np.eye(2, dtype=np.complex128)
    else:
        ac = np.conj(alpha)
        phi = np.arctan2(-float((ac * (beta + delta)).imag),
                         float((ac * (beta - delta)).real))
        mu = beta * cmath.exp(1j * phi) + delta * cmath.exp(-1j * phi)
        kappa = float((mu * ac).real) / abs(alpha)
        theta = 0.5 * np.arctan2(-2.0 * abs(alpha), kappa)
        cth, sth = np.cos(theta), np.sin(theta)
        U1 = np.array([[cth, -cmath.exp(-1j * phi) * sth],
                       [cmath.exp(1j * phi) * sth, cth]], dtype=np.complex128)

    Z = U1.conj().T @ T0 @ U1
    bp, dp = Z[0, 1], Z[1, 0]
    U = U1
    if abs(bp) < abs(dp):
        X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
        U = U @ X
        bp, dp = dp, bp
    a = abs(bp)
    b = abs(dp)

    if a <= 1e-15 * scale:
        t = 0.0
        psi = 0.0
        a = b = 0.0
    elif b <= 1e-15 * scale:
        t = cmath.phase(bp)
        psi = 0.0
        b = 0.0
    else:
        t = 0.5 * (cmath.phase(bp) + cmath.phase(dp))
        psi = 0.5 * (cmath.phase(dp) - cmath.phase(bp))
    D = np.array([[1.0, 0.0], [0.0, cmath.exp(1j * psi)]], dtype=np.complex128)
    U = U @ D
    gamma = cmath.exp(-1j * t) * complex(tau)
    return Canonical2x2(t=float(t), gamma=gamma, a=float(a), b=float(b), U=U)


def _boundary_max(g: complex, A: float, B: float) -> float:
    """max over s of |g + A cos(s) + i B sin(s)|.

    The squared modulus is a degree-2 trigonometric polynomial; its
    critical points solve P sin s + Q cos s + R sin 2s = 0, which becomes
    a quartic in z = e^{is}.  All unit-modulus roots are polished by
    Newton steps and compared with the axis points.
    """
    g1, g2 = g.real, g.imag
    P = -2.0 * A * g1
    Q = 2.0 * B * g2
    R = B * B - A * A

    def f(s):
        return (g1 + A * np.cos(s)) ** 2 + (g2 + B * np.sin(s)) ** 2

    def df(s):
        return P * np.sin(s) + Q * np.cos(s) + R * np.sin(2.0 * s)

    def ddf(s):
        return P * np.cos(s) - Q * np.sin(s) + 2.0 * R * np.cos(2.0 * s)

    cands = [0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi]
    coeffs = np.array([R, P + 1j * Q, 0.0, -P + 1j * Q, -R],
                      dtype=np.complex128)
    if np.max(np.abs(coeffs)) > 0.0:
        for z in np.roots(coeffs):
            if abs(abs(z) - 1.0) < 0.1:
                s = float(np.angle(z))
                cands.append(s)
                for _ in range(50):
                    d2 = ddf(s)
                    if abs(d2) < 1e-300:
                        break
                    step = df(s) / d2
                    s -= step
                    if abs(step) < 1e-15:
                        break
                cands.append(s)
    return float(np.sqrt(max(f(s) for s in cands)))


def wq_2x2_exact(T, q):
    """Exact w_q for 2x2 input, with the canonical form used to get it.

    In canonical coordinates the range is the filled ellipse centered at
    gamma*q with semi-axes c + p d and d + p c, c = (a+b)/2, d = (a-b)/2,
    p = sqrt(1 - q^2), rotated by e^{it}; the radius is the maximum
    modulus over the boundary, solved in closed form to ~1e-12.
    """
    canon = canonical_2x2(T)
    qf = _qf(q)
    p = np.sqrt(max(0.0, 1.0 - qf * qf))
    c = (canon.a + canon.b) / 2.0
    d = (canon.a - canon.b) / 2.0
    A = c + p * d
    B = d + p * c
    value = _boundary_max(canon.gamma * qf, A, B)
    return value, canon


def classical_radius(T, tol: float = 1e-10) -> float:
    """Numerical radius max_theta lambda_max(Re(e^{i theta} T)).

    The rotated Hermitian part's top eigenvalue is the support function
    of the numerical range, so h(theta) >= w cos(theta - theta*) near the
    maximizer; branch-and-bound on angle intervals with the bound
    max(h(a), h(b)) / cos(width/2) certifies the result within tol.
    """
    T = as_matrix(T, square=True)
    if tol <= 0.0:
        raise ParamOutOfRange("tol must be positive")
    if not np.any(T):
        return 0.0

    def h(theta: float) -> float:
        R = cmath.exp(1j * theta) * T
        return float(herm_eig((R + R.conj().T) / 2.0).eigenvalues[-1])

    N = 64
    grid = [2.0 * np.pi * k / N for k in range(N + 1)]
    vals = {th: h(th) for th in grid[:-1]}
    vals[grid[-1]] = vals[grid[0]]
    lo = max(vals.values())
    heap = []
    for k in range(N):
        a, b = grid[k], grid[k + 1]
        up = max(vals[a], vals[b]) / np.cos((b - a) / 2.0)
        heapq.heappush(heap, (-up, a, b, vals[a], vals[b]))

    while heap:
        neg_up, a, b, ha, hb = heap[0]
        up = -neg_up
        if up <= lo + tol:
            break
        heapq.heappop(heap)
        mid = (a + b) / 2.0
        hm = h(mid)
        lo = max(lo, hm)
        half = (b - a) / 4.0
        for lft, rgt, hl, hr in ((a, mid, ha, hm), (mid, b, hm, hb)):
            u = max(hl, hr) / np.cos(half)
            if u > lo:
                heapq.heappush(heap, (-u, lft, rgt, hl, hr))
    up = -heap[0][0] if heap else lo
    return float((lo + min(up, lo + tol)) / 2.0)


def range_cloud(T, q, n_points: int, seed: int) -> RangeCloud:
    """Sampled values <T x, y>, plus the exact boundary for 2x2 input."""
    T = as_matrix(T, square=True)
    qf = _qf(q)
    n = _check_dims(T, qf)
    if n_points < 1:
        raise ParamOutOfRange("n_points must be >= 1")

    width = backend.row_width(n)
    rng = rng_stream(seed, _TAG_CLOUD)
    chunks = []
    done = 0
    while done < n_points:
        k = min(_CHUNK_ROWS, n_points - done)
        u = rng.random((k, width))
        chunks.append(backend.pair_values(T, qf, u))
        done += k
    points = np.concatenate(chunks)

    boundary = None
    if n == 2:
        value_ignored, canon = wq_2x2_exact(T, qf)
        p = np.sqrt(max(0.0, 1.0 - qf * qf))
        c = (canon.a + canon.b) / 2.0
        d = (canon.a - canon.b) / 2.0
        s = np.linspace(0.0, 2.0 * np.pi, 720, endpoint=False)
        curve = (canon.gamma * qf + (c + p * d) * np.cos(s)
                 + 1j * (d + p * c) * np.sin(s))
        boundary = cmath.exp(1j * canon.t) * curve
    return RangeCloud(points=points, boundary=boundary, q=_qv(q))


def cloud_pair(T, q, seed: int, index: int) -> AdmissiblePair:
    """The admissible pair behind range_cloud point `index` (re-derived
    from the seed; used to spot-check cloud membership)."""
    T = as_matrix(T, square=True)
    qf = _qf(q)
    n = _check_dims(T, qf)
    width = backend.row_width(n)
    rng = rng_stream(seed, _TAG_CLOUD)
    row = None
    done = 0
    while done <= index:
        k = min(_CHUNK_ROWS, index + 1 - done)
        u = rng.random((k, width))
        row = u[-1]
        done += k
    x, y = backend.reconstruct_pair(T, qf, row)
    return AdmissiblePair(x=x, y=y)
