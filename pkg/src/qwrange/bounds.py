"""Inequality checks for the q-numerical radius, as replayable reports.

Every check evaluates one inequality between computable quantities and
returns IneqReport objects.  The orientation discipline keeps each check
one-sided sound:

* upper-class checks (claimed: small ≤ big) put a certified lower bound
  (attained estimate, or the exact 2x2 value) on the small side, so a
  negative slack beyond round-off is a genuine violation;
* where a w_q appears inside the big side of an upper bound, it is
  replaced by the certified upper surrogate min(operator norm, weighted
  modulus bound), never by a point estimate;
* lower-class checks estimate the big side at high effort; the class
  tolerance absorbs the residual optimizer gap, and exact 2x2 oracles
  take over (with a much tighter tolerance) whenever possible;
* equality-class checks compare unitarily similar configurations with
  witness cross-seeding, so both sides are evaluated at a shared
  maximizer mapped through the explicit similarity.

Tolerance per class: upper 1e-8, lower 1e-6 (1e-10 when every radius in
the report is exact), equality 2e-6 (1e-8 structural), vector 1e-12.
"""

from __future__ import annotations

import cmath
import inspect
import zlib
from dataclasses import dataclass

import numpy as np

from . import radius
from .core import (as_matrix, block2x2, direct_sum, gen_random, herm_eig,
                   modulus_power, psd_sqrt_clamped01, rng_stream,
                   spectral_norm)
from .errors import (NotNilpotent, NotPositive, NotProjection, NotUnitary,
                     ParamOutOfRange)
from .radius import (QValue, classical_radius, estimate_wq, objective,
                     wq_2x2_exact)

TOL = {
    "upper": 1e-8,
    "lower": 1e-6,
    "lower_exact": 1e-10,
    "equality": 2e-6,
    "structural": 1e-8,
    "vector": 1e-12,
}


@dataclass(frozen=True)
class Effort:
    restarts: int
    max_iter: int


FAST = Effort(8, 100)
DEFAULT = Effort(32, 300)
HIGH = Effort(64, 500)


def effort_preset(name: str) -> Effort:
    try:
        return {"fast": FAST, "default": DEFAULT, "high": HIGH}[name]
    except KeyError:
        raise ParamOutOfRange(f"unknown effort preset {name!r}") from None


@dataclass(frozen=True)
class IneqReport:
    name: str
    check: str
    cls: str
    lhs: float
    rhs: float
    slack: float
    q: float
    params: dict
    witnesses: dict
    effort: Effort
    seed: int
    tol: float
    passed: bool


def _report(name, check, cls, lhs, rhs, q, params, witnesses, effort, seed,
            tol=None):
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs
    if tol is None:
        tol = TOL[cls if cls != "lower_exact" else "lower_exact"]
    cls_out = "lower" if cls == "lower_exact" else cls
    return IneqReport(name=name, check=check, cls=cls_out, lhs=lhs, rhs=rhs,
                      slack=slack, q=float(q), params=dict(params),
                      witnesses=dict(witnesses), effort=effort,
                      seed=int(seed), tol=float(tol),
                      passed=bool(slack >= -tol))


def _subseed(seed: int, label: str) -> int:
    return (int(seed) * 0x9E3779B9 + zlib.crc32(label.encode())) & 0x7FFFFFFF


def bracket_factor(q: float) -> float:
    """(q + 2 sqrt(1-q^2)) / q, the direct-sum bracket constant."""
    if q <= 0.0:
        raise ParamOutOfRange("bracket factor needs q > 0")
    return (q + 2.0 * np.sqrt(max(0.0, 1.0 - q * q))) / q


def nilpotent_factor(q: float) -> float:
    """sqrt(1 - 3 q^2 / 4 + q sqrt(1-q^2)), the square-zero bound factor."""
    if not 0.0 <= q < 1.0:
        raise ParamOutOfRange("square-zero factor needs q in [0, 1)")
    return float(np.sqrt(1.0 - 0.75 * q * q
                         + q * np.sqrt(max(0.0, 1.0 - q * q))))


def alpha_r_rhs(S, q: float, alpha: float, r: float) -> float:
    """Weighted modulus upper bound on w_q(S)^{2r}.

    q^2 ||a|S|^{2r} + (1-a)|S*|^{2r}|| + (1-q^2)(a|||S|^{2r}|| +
    (1-a)|||S*|^{2r}||) + 2q sqrt(1-q^2) |||S*|^{2r(1-a)}|| |||S|^{2ra}||.
    """
    S = as_matrix(S, square=True)
    if not 0.0 <= alpha <= 1.0:
        raise ParamOutOfRange("alpha must lie in [0, 1]")
    if r < 1.0:
        raise ParamOutOfRange("r must be >= 1")
    p2 = max(0.0, 1.0 - q * q)
    Sa = modulus_power(S, 2.0 * r)
    Ss = modulus_power(S.conj().T, 2.0 * r)
    mixed = spectral_norm(alpha * Sa + (1.0 - alpha) * Ss)
    na = spectral_norm(Sa)
    ns = spectral_norm(Ss)
    cross = (spectral_norm(modulus_power(S.conj().T, 2.0 * r * (1.0 - alpha)))
             * spectral_norm(modulus_power(S, 2.0 * r * alpha)))
    return (q * q * mixed + p2 * (alpha * na + (1.0 - alpha) * ns)
            + 2.0 * q * np.sqrt(p2) * cross)


@dataclass(frozen=True)
class _Est:
    """A certified lower value with the maximizing sphere point."""

    value: float
    x: np.ndarray
    exact: bool


def _west(T, q: float, effort: Effort, seed: int, extra=None) -> _Est:
    """Certified lower bound on w_q(T): exact for 2x2, else the attained
    multi-start estimate.  The witness x seeds related searches."""
    T = as_matrix(T, square=True)
    est = estimate_wq(T, q, restarts=effort.restarts,
                      max_iter=effort.max_iter, seed=seed,
                      extra_starts=extra)
    if T.shape[0] == 2:
        value, _ = wq_2x2_exact(T, q)
        return _Est(value=max(value, est.value), x=est.witness.x, exact=True)
    return _Est(value=est.value, x=est.witness.x, exact=False)


def _whi(T, q: float) -> float:
    """Certified upper bound on w_q(T): the exact 2x2 value, else
    min(operator norm, weighted modulus bound at alpha = 1/2, r = 1)."""
    T = as_matrix(T, square=True)
    if T.shape[0] == 2:
        value, _ = wq_2x2_exact(T, q)
        return value
    return min(spectral_norm(T), float(np.sqrt(alpha_r_rhs(T, q, 0.5, 1.0))))


def _high(effort: Effort) -> Effort:
    return Effort(max(effort.restarts * 2, HIGH.restarts),
                  max(effort.max_iter, HIGH.max_iter))


def _lower_tol(*ests: _Est) -> float:
    if all(e.exact for e in ests):
        return TOL["lower_exact"]
    return TOL["lower"]


def _qf(q) -> float:
    return radius._qf(q)


# ---------------------------------------------------------------------------
# norm sandwich and powers


def check_norm_sandwich(T, q, effort: Effort = DEFAULT, seed: int = 0):
    """q ||T|| / 2 <= w_q(T) <= ||T||."""
    T = as_matrix(T, square=True)
    qf = _qf(q)
    nrm = spectral_norm(T)
    big = _west(T, qf, _high(effort), _subseed(seed, "sandwich"))
    wit = {"T": T}
    r1 = _report("norm_sandwich_lower", "check_norm_sandwich", "lower",
                 qf * nrm / 2.0, big.value, qf, {"norm": nrm}, wit, effort,
                 seed, tol=_lower_tol(big))
    small = _west(T, qf, effort, _subseed(seed, "sandwich_u"))
    r2 = _report("norm_sandwich_upper", "check_norm_sandwich", "upper",
                 small.value, nrm, qf, {"norm": nrm}, wit, effort, seed)
    return [r1, r2]


def check_power_ineq(T, q, n: int = 2, effort: Effort = DEFAULT,
                     seed: int = 0):
    """q^{n-1} w_q(T^n) <= w_q(T)^n, checked with a certified lower bound
    of the left against a certified upper bound of the right."""
    T = as_matrix(T, square=True)
    qf = _qf(q)
    if qf <= 0.0:
        raise ParamOutOfRange("power inequality needs q > 0")
    if n < 1:
        raise ParamOutOfRange("n must be >= 1")
    Tn = np.linalg.matrix_power(T, n)
    low = _west(Tn, qf, effort, _subseed(seed, "power"))
    lhs = qf ** (n - 1) * low.value
    rhs = _whi(T, qf) ** n
    return [_report("power_inequality", "check_power_ineq", "upper", lhs,
                    rhs, qf, {"n": n}, {"T": T}, effort, seed)]


# ---------------------------------------------------------------------------
# basic invariances and block comparisons


def _matched_pair(M1, M2, to2, qf, effort, seed, label):
    """Estimates of two unitarily similar matrices, cross-seeded through
    the similarity map so both searches share their best point."""
    e1 = _west(M1, qf, effort, _subseed(seed, label + "_1"))
    e2 = _west(M2, qf, effort, _subseed(seed, label + "_2"), extra=[to2(e1.x)])
    v1 = max(e1.value, objective(M1, qf, to2.inv(e2.x)))
    v2 = max(e2.value, objective(M2, qf, to2(e1.x)))
    return v1, v2, e1.exact and e2.exact


class _UnitaryMap:
    """Start mapping x -> U^H x for M2 = U^H M1 U (scalar phases allowed)."""

    def __init__(self, U):
        self.U = U

    def __call__(self, x):
        return self.U.conj().T @ x

    def inv(self, x):
        return self.U @ x


def check_basic_props(T1, T2, T3, T4, q, theta: float = 0.7,
                      lam: complex = 1.5 + 0.5j, effort: Effort = DEFAULT,
                      seed: int = 0):
    """Scale homogeneity, unitary and phase invariance of w_q, the
    off-diagonal/diagonal block swap equalities, and block monotonicity."""
    T1 = as_matrix(T1, square=True)
    T2 = as_matrix(T2, square=True)
    T3 = as_matrix(T3, square=True)
    T4 = as_matrix(T4, square=True)
    qf = _qf(q)
    lam = complex(lam)
    n = T1.shape[0]
    reports = []
    wit = {"T1": T1, "T2": T2, "T3": T3, "T4": T4}
    base_params = {"theta": float(theta), "lam_re": lam.real,
                   "lam_im": lam.imag}

    # w_q(lam T) = |lam| w_q(T): the objective is positively homogeneous,
    # so both searches see the same landscape up to the factor.
    e1 = _west(T1, qf, effort, _subseed(seed, "scale"))
    e2 = _west(lam * T1, qf, effort, _subseed(seed, "scale2"), extra=[e1.x])
    v1 = max(e1.value, objective(T1, qf, e2.x))
    v2 = max(e2.value, objective(lam * T1, qf, e1.x))
    reports.append(_report("scale_homogeneity", "check_basic_props",
                           "equality", abs(lam) * v1, v2, qf, base_params,
                           wit, effort, seed,
                           tol=_eq_tol(e1.exact and e2.exact)))

    # w_q(U* T U) = w_q(T) for unitary U.
    U = gen_random("unitary", n, _subseed(seed, "invU"))
    M2 = U.conj().T @ T1 @ U
    v1, v2, exact = _matched_pair(T1, M2, _UnitaryMap(U), qf, effort, seed,
                                  "unitary")
    rep = _report("unitary_invariance", "check_basic_props", "equality",
                  v1, v2, qf, base_params, {**wit, "U": U}, effort, seed,
                  tol=_eq_tol(exact))
    reports.append(rep)

    # w_{mu q}(T) = w_q(T) for |mu| = 1: the q parameter is reduced to its
    # modulus on construction, so both invocations coincide exactly.
    mu = cmath.exp(1j * theta)
    v1 = _west(T1, _qf(QValue.from_scalar(mu * qf)), effort,
               _subseed(seed, "phase")).value
    v2 = _west(T1, qf, effort, _subseed(seed, "phase")).value
    reports.append(_report("phase_parameter_invariance", "check_basic_props",
                           "equality", v1, v2, qf, base_params, wit, effort,
                           seed))

    O = np.zeros_like(T2)
    M = block2x2(O, T2, T3, O)
    Ms = block2x2(O, T3, T2, O)
    X = block2x2(O, np.eye(n, dtype=complex), np.eye(n, dtype=complex), O)
    v1, v2, exact = _matched_pair(M, Ms, _UnitaryMap(X), qf, effort, seed,
                                  "oswap")
    reports.append(_report("offdiag_swap", "check_basic_props", "equality",
                           v1, v2, qf, base_params, wit, effort, seed,
                           tol=_eq_tol(exact)))

    # [[O, T2], [e^{i theta} T3, O]] is e^{i theta/2} times a diagonal
    # phase conjugation of [[O, T2], [T3, O]].
    Mp = block2x2(O, T2, cmath.exp(1j * theta) * T3, O)
    D = direct_sum([np.eye(n, dtype=complex),
                    cmath.exp(1j * theta / 2.0) * np.eye(n, dtype=complex)])
    v1, v2, exact = _matched_pair(M, Mp, _UnitaryMap(D), qf, effort, seed,
                                  "ophase")
    reports.append(_report("offdiag_phase", "check_basic_props", "equality",
                           v1, v2, qf, base_params, wit, effort, seed,
                           tol=_eq_tol(exact)))

    Md = direct_sum([T1, T4])
    Mds = direct_sum([T4, T1])
    v1, v2, exact = _matched_pair(Md, Mds, _UnitaryMap(X), qf, effort, seed,
                                  "dswap")
    reports.append(_report("diag_swap", "check_basic_props", "equality",
                           v1, v2, qf, base_params, wit, effort, seed,
                           tol=_eq_tol(exact)))

    # block monotonicity: the diagonal and anti-diagonal parts have
    # q-range contained in that of the full block matrix.
    full = block2x2(T1, T2, T3, T4)
    for part, name in ((direct_sum([T1, T4]), "block_compression_diag"),
                       (block2x2(O, T2, T3, O), "block_compression_offdiag")):
        lo = _west(part, qf, effort, _subseed(seed, name))
        hi = _west(full, qf, _high(effort), _subseed(seed, name + "_f"),
                   extra=[lo.x])
        reports.append(_report(name, "check_basic_props", "lower", lo.value,
                               hi.value, qf, base_params, wit, effort, seed,
                               tol=_lower_tol(lo, hi)))
    return reports


def _eq_tol(exact: bool) -> float:
    return TOL["structural"] if exact else TOL["equality"]


# ---------------------------------------------------------------------------
# direct-sum style brackets


def _sandwich_config(kind, A, B):
    n = A.shape[0]
    O = np.zeros_like(A)
    I = np.eye(n, dtype=complex)
    if kind == "diag":
        M = direct_sum([A, B])
        terms = (A, B)
        # the two embeddings are trivial
        V = direct_sum([I, I])
    elif kind == "sym":
        M = block2x2(A, B, B, A)
        terms = (A + B, A - B)
        V = block2x2(I, I, I, -I) / np.sqrt(2.0)  # M = V diag(terms) V^H
    elif kind == "skew":
        M = block2x2(B, -A, A, B)
        terms = (B + 1j * A, B - 1j * A)
        V = block2x2(I, I, -1j * I, 1j * I) / np.sqrt(2.0)
    else:
        raise ParamOutOfRange(f"unknown sandwich kind {kind!r}")
    return M, terms, V


def check_sandwich(kind, A, B, q, effort: Effort = DEFAULT, seed: int = 0):
    """Bracket of w_q of a structured 2-block matrix by the extreme of two
    combinations: max-term <= w_q(M) <= factor * max-term, with factor
    (q + 2 sqrt(1-q^2)) / q.  kind selects diag / sym / skew structure."""
    A = as_matrix(A, square=True)
    B = as_matrix(B, square=True)
    qf = _qf(q)
    if qf <= 0.0:
        raise ParamOutOfRange("sandwich bracket needs q > 0")
    M, terms, V = _sandwich_config(kind, A, B)
    n = A.shape[0]
    fac = bracket_factor(qf)
    wit = {"A": A, "B": B}
    params = {"kind_" + kind: 1.0, "factor": fac}

    # lower half: each term's maximizer embeds into M through V.
    lows = [
        _west(terms[0], qf, effort, _subseed(seed, kind + "t0")),
        _west(terms[1], qf, effort, _subseed(seed, kind + "t1")),
    ]
    zero = np.zeros(n, dtype=complex)
    starts = [V @ np.concatenate([lows[0].x, zero]),
              V @ np.concatenate([zero, lows[1].x])]
    big = _west(M, qf, _high(effort), _subseed(seed, kind + "M"),
                extra=starts)
    lhs = max(lows[0].value, lows[1].value)
    r1 = _report(f"{kind}_bracket_lower", "check_sandwich", "lower", lhs,
                 big.value, qf, params, wit, effort, seed,
                 tol=_lower_tol(big, *lows))

    # upper half: certified lower bound of w_q(M) against the factor times
    # certified upper surrogates of the terms.
    rhs = fac * max(_whi(terms[0], qf), _whi(terms[1], qf))
    r2 = _report(f"{kind}_bracket_upper", "check_sandwich", "upper",
                 big.value, rhs, qf, params, wit, effort, seed)
    return [r1, r2]


# ---------------------------------------------------------------------------
# weighted modulus and four-block upper bounds


def check_alpha_r_upper(S, q, alpha: float = 0.5, r: float = 1.0,
                        effort: Effort = DEFAULT, seed: int = 0):
    """w_q(S)^{2r} against the weighted modulus bound."""
    S = as_matrix(S, square=True)
    qf = _qf(q)
    if not 0.0 < qf <= 1.0:
        raise ParamOutOfRange("weighted modulus bound needs q in (0, 1]")
    low = _west(S, qf, effort, _subseed(seed, "alphar"))
    lhs = low.value ** (2.0 * r)
    rhs = alpha_r_rhs(S, qf, alpha, r)
    return [_report("weighted_modulus_upper", "check_alpha_r_upper", "upper",
                    lhs, rhs, qf, {"alpha": alpha, "r": r}, {"S": S}, effort,
                    seed)]


def check_four_block_upper(P, Q, R, S, q, effort: Effort = DEFAULT,
                           seed: int = 0):
    """w_q([[P,Q],[R,S]]) against the half-bracket-factor combination of
    the rotated Hermitian-like splittings."""
    P = as_matrix(P, square=True)
    Q = as_matrix(Q, square=True)
    R = as_matrix(R, square=True)
    S = as_matrix(S, square=True)
    qf = _qf(q)
    if qf <= 0.0:
        raise ParamOutOfRange("four-block bound needs q > 0")
    M = block2x2(P, Q, R, S)
    low = _west(M, qf, effort, _subseed(seed, "fourblock"))
    fac = bracket_factor(qf) / 2.0
    comb = max(_whi((R - Q) + 1j * (P + S), qf),
               _whi((R - Q) - 1j * (P + S), qf))
    rhs = fac * (comb + _whi(Q + R, qf) + _whi(S - P, qf))
    return [_report("four_block_split_upper", "check_four_block_upper",
                    "upper", low.value, rhs, qf, {"factor": fac},
                    {"P": P, "Q": Q, "R": R, "S": S}, effort, seed)]


def check_nilpotent_upper(T, q, effort: Effort = DEFAULT, seed: int = 0):
    """For T with T^2 = 0: w_q(T) <= factor * ||T||, and the doubled block
    [[T,T],[-T,-T]] (also square-zero) within twice that."""
    T = as_matrix(T, square=True)
    qf = _qf(q)
    if qf >= 1.0:
        raise ParamOutOfRange("square-zero bound needs q < 1")
    scale = max(float(np.linalg.norm(T)), 1.0)
    if float(np.linalg.norm(T @ T)) > 1e-10 * scale:
        raise NotNilpotent("T^2 != 0 beyond tolerance")
    fac = nilpotent_factor(qf)
    nrm = spectral_norm(T)
    wit = {"T": T}
    low = _west(T, qf, effort, _subseed(seed, "nilp"))
    r1 = _report("nilpotent_factor_upper", "check_nilpotent_upper", "upper",
                 low.value, fac * nrm, qf, {"factor": fac}, wit, effort,
                 seed)
    M = block2x2(T, T, -T, -T)
    low2 = _west(M, qf, effort, _subseed(seed, "nilp2"))
    r2 = _report("nilpotent_block_factor_upper", "check_nilpotent_upper",
                 "upper", low2.value, 2.0 * fac * nrm, qf, {"factor": fac},
                 wit, effort, seed)
    return [r1, r2]


def check_offdiag_bounds(T2, T3, q, effort: Effort = DEFAULT, seed: int = 0):
    """Two-sided control of w_q([[O,T2],[T3,O]]) by the smaller/larger of
    w_q(T2), w_q(T3) with a min-norm correction term."""
    T2 = as_matrix(T2, square=True)
    T3 = as_matrix(T3, square=True)
    qf = _qf(q)
    if not 0.0 < qf < 1.0:
        raise ParamOutOfRange("off-diagonal bounds need q in (0, 1)")
    n = T2.shape[0]
    O = np.zeros_like(T2)
    M = block2x2(O, T2, T3, O)
    fac = bracket_factor(qf)
    nf = nilpotent_factor(qf)
    minnorm = min(spectral_norm(T2 + T3), spectral_norm(T2 - T3))
    wit = {"T2": T2, "T3": T3}
    params = {"factor": fac, "sq_zero_factor": nf, "min_norm": minnorm}

    low_M = _west(M, qf, effort, _subseed(seed, "odu"))
    rhs = fac * min(_whi(T2, qf), _whi(T3, qf)) + nf * minnorm
    r1 = _report("offdiag_mixed_upper", "check_offdiag_bounds", "upper",
                 low_M.value, rhs, qf, params, wit, effort, seed)

    lo2 = _west(T2, qf, effort, _subseed(seed, "odl2"))
    lo3 = _west(T3, qf, effort, _subseed(seed, "odl3"))
    zero = np.zeros(n, dtype=complex)
    starts = [np.concatenate([lo2.x, zero]), np.concatenate([zero, lo3.x]),
              np.concatenate([lo2.x, lo2.x]) / np.sqrt(2.0)]
    big = _west(M, qf, _high(effort), _subseed(seed, "odlM"), extra=starts)
    lhs = max(lo2.value, lo3.value) - nf * minnorm
    r2 = _report("offdiag_mixed_lower", "check_offdiag_bounds", "lower",
                 lhs, big.value, qf, params, wit, effort, seed,
                 tol=_lower_tol(big, lo2, lo3))
    return [r1, r2]


def check_lower_products(T2, T3, q, n: int = 1, effort: Effort = DEFAULT,
                         seed: int = 0):
    """Lower bounds for the anti-diagonal block matrix through products:
    its square dominates (q/2) w_q of the anti-commutator/commutator, its
    value dominates the 2n-th root of w_q of the alternating products, and
    the full four-block matrix dominates the same quantities."""
    T2 = as_matrix(T2, square=True)
    T3 = as_matrix(T3, square=True)
    qf = _qf(q)
    if qf <= 0.0:
        raise ParamOutOfRange("product lower bounds need q > 0")
    if n < 1:
        raise ParamOutOfRange("n must be >= 1")
    dim = T2.shape[0]
    O = np.zeros_like(T2)
    M = block2x2(O, T2, T3, O)
    wit = {"T2": T2, "T3": T3}
    reports = []

    anti = T2 @ T3 + T3 @ T2
    comm = T2 @ T3 - T3 @ T2
    la = _west(anti, qf, effort, _subseed(seed, "anti"))
    lc = _west(comm, qf, effort, _subseed(seed, "comm"))
    big = _west(M, qf, _high(effort), _subseed(seed, "prodM"))
    lhs = (qf / 2.0) * max(la.value, lc.value)
    reports.append(_report("offdiag_product_sq_lower", "check_lower_products",
                           "lower", lhs, big.value ** 2, qf, {"n": n}, wit,
                           effort, seed, tol=_lower_tol(big, la, lc)))

    pn = np.linalg.matrix_power(T2 @ T3, n)
    qn = np.linalg.matrix_power(T3 @ T2, n)
    lp = _west(pn, qf, effort, _subseed(seed, "pn"))
    lq = _west(qn, qf, effort, _subseed(seed, "qn"))
    lhs = qf ** (2 * n - 1) * max(lp.value, lq.value) ** (1.0 / (2 * n))
    reports.append(_report("offdiag_product_power_lower",
                           "check_lower_products", "lower", lhs, big.value,
                           qf, {"n": n}, wit, effort, seed,
                           tol=_lower_tol(big, lp, lq)))

    # four-block corner version: diagonal blocks drawn deterministically.
    T1 = gen_random("ginibre", dim, _subseed(seed, "corner1"))
    T4 = gen_random("ginibre", dim, _subseed(seed, "corner4"))
    F = block2x2(T1, T2, T3, T4)
    l1 = _west(T1, qf, effort, _subseed(seed, "c1"))
    l4 = _west(T4, qf, effort, _subseed(seed, "c4"))
    zero = np.zeros(dim, dtype=complex)
    starts = [np.concatenate([l1.x, zero]), np.concatenate([zero, l4.x])]
    bigF = _west(F, qf, _high(effort), _subseed(seed, "cF"), extra=starts)
    lhs = max(l1.value, l4.value,
              np.sqrt(qf / 2.0) * np.sqrt(la.value),
              np.sqrt(qf / 2.0) * np.sqrt(lc.value))
    reports.append(_report("four_block_corner_lower", "check_lower_products",
                           "lower", lhs, bigF.value, qf, {"n": n},
                           {**wit, "T1": T1, "T4": T4}, effort, seed,
                           tol=_lower_tol(bigF, l1, l4, la, lc)))
    return reports


def check_power_structure(T1, T2, q, n: int = 3, effort: Effort = DEFAULT,
                          seed: int = 0):
    """Powers of [[T1,T2],[T2,T1]] stay in that block form with
    P + Q = (T1+T2)^n and P - Q = (T1-T2)^n; and the alternating-sign
    block matrix power bound that follows from it."""
    T1 = as_matrix(T1, square=True)
    T2 = as_matrix(T2, square=True)
    qf = _qf(q)
    if qf <= 0.0:
        raise ParamOutOfRange("power structure bound needs q > 0")
    if n < 1:
        raise ParamOutOfRange("n must be >= 1")
    dim = T1.shape[0]
    wit = {"T1": T1, "T2": T2}

    Mn = np.linalg.matrix_power(block2x2(T1, T2, T2, T1), n)
    P = Mn[:dim, :dim]
    Q = Mn[:dim, dim:]
    res = max(float(np.linalg.norm((P + Q)
                                   - np.linalg.matrix_power(T1 + T2, n))),
              float(np.linalg.norm((P - Q)
                                   - np.linalg.matrix_power(T1 - T2, n))))
    r1 = _report("block_power_structure", "check_power_structure",
                 "structural", res, 0.0, qf, {"n": n}, wit, effort, seed,
                 tol=TOL["structural"])

    M = block2x2(T1, T2, -T2, -T1)
    M2n = np.linalg.matrix_power(M, 2 * n)
    low = _west(M2n, qf, effort, _subseed(seed, "altpow"))
    fac = bracket_factor(qf)
    A = np.linalg.matrix_power((T1 - T2) @ (T1 + T2), n)
    B = np.linalg.matrix_power((T1 + T2) @ (T1 - T2), n)
    rhs = fac * max(_whi(A, qf), _whi(B, qf))
    r2 = _report("alternating_block_power_upper", "check_power_structure",
                 "upper", low.value, rhs, qf, {"n": n, "factor": fac}, wit,
                 effort, seed)
    return [r1, r2]


# ---------------------------------------------------------------------------
# vector-level inequalities


def check_vector_inequalities(S, a, b, c, t: float = 0.5, alpha: float = 0.5,
                              effort: Effort = DEFAULT, seed: int = 0):
    """Pointwise inequalities behind the operator bounds: the Schwarz
    inequality for positive operators, its mixed-modulus version, the
    projection-defect inequality, and the two-sided pivot inequality."""
    S = as_matrix(S, square=True)
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    c = np.asarray(c, dtype=np.complex128).reshape(-1)
    c = c / np.linalg.norm(c)
    qf = 1.0  # these hold for every q; reported with a fixed placeholder
    reports = []
    wit = {"S": S, "a": a.reshape(-1, 1), "b": b.reshape(-1, 1),
           "c": c.reshape(-1, 1)}
    params = {"t": float(t), "alpha": float(alpha)}

    def ip(u, v):
        return complex(np.sum(u * np.conj(v)))

    eig = herm_eig((S + S.conj().T) / 2.0, tol=1e-8)
    scale = max(spectral_norm(S), 1.0)
    herm_res = float(np.linalg.norm(S - S.conj().T))
    if herm_res <= 1e-10 * scale and eig.eigenvalues.min() >= -1e-10 * scale:
        lhs = abs(ip(S @ a, b)) ** 2
        rhs = float((ip(S @ a, a) * ip(S @ b, b)).real)
        reports.append(_report("schwarz_positive",
                               "check_vector_inequalities", "vector", lhs,
                               rhs, qf, params, wit, effort, seed,
                               tol=TOL["vector"] * max(1.0, rhs)))
    else:
        # mixed version for arbitrary S
        Sa2 = modulus_power(S, 2.0 * alpha)
        Ss2 = modulus_power(S.conj().T, 2.0 * (1.0 - alpha))
        lhs = abs(ip(S @ a, b)) ** 2
        rhs = float((ip(Sa2 @ a, a) * ip(Ss2 @ b, b)).real)
        reports.append(_report("mixed_schwarz", "check_vector_inequalities",
                               "vector", lhs, rhs, qf, params, wit, effort,
                               seed, tol=TOL["vector"] * max(1.0, rhs)))

    na2 = float(np.linalg.norm(a)) ** 2
    nb2 = float(np.linalg.norm(b)) ** 2
    lhs = na2 * nb2 - abs(ip(a, b)) ** 2
    rhs = na2 * float(np.linalg.norm(b - t * a)) ** 2
    reports.append(_report("projection_defect_vector",
                           "check_vector_inequalities", "vector", lhs, rhs,
                           qf, params, wit, effort, seed,
                           tol=TOL["vector"] * max(1.0, abs(rhs))))

    lhs = 2.0 * abs(ip(a, c) * ip(c, b))
    rhs = float(np.linalg.norm(a)) * float(np.linalg.norm(b)) + abs(ip(a, b))
    reports.append(_report("buzano_vector", "check_vector_inequalities",
                           "vector", lhs, rhs, qf, params, wit, effort,
                           seed, tol=TOL["vector"] * max(1.0, rhs)))
    return reports


# ---------------------------------------------------------------------------
# section-three style upper bounds through the classical radius


def check_radius_gap(T, q, lam_grid=None, effort: Effort = DEFAULT,
                     seed: int = 0):
    """w_q(T)^2 - w(T^2) <= ||lam T - T*||^2 / q^2 for each scalar lam."""
    T = as_matrix(T, square=True)
    qf = _qf(q)
    if qf <= 0.0:
        raise ParamOutOfRange("radius gap bound needs q > 0")
    if lam_grid is None:
        lam_grid = default_lam_grid(seed)
    low = _west(T, qf, effort, _subseed(seed, "gap"))
    wT2 = classical_radius(T @ T)
    lhs = low.value ** 2 - wT2
    reports = []
    for k, lam in enumerate(lam_grid):
        lam = complex(lam)
        rhs = spectral_norm(lam * T - T.conj().T) ** 2 / qf ** 2
        reports.append(_report(f"radius_gap_{k}", "check_radius_gap",
                               "upper", lhs, rhs, qf,
                               {"lam_re": lam.real, "lam_im": lam.imag,
                                "w_t2": wT2}, {"T": T}, effort, seed))
    return reports


def default_lam_grid(seed: int) -> list[complex]:
    rng = rng_stream(_subseed(seed, "lamgrid"), 0xB7)
    grid = [1.0 + 0.0j, -1.0 + 0.0j, 1j, -1j]
    grid.extend(np.exp(2j * np.pi * rng.random(4)))
    grid.extend([0.5 + 0.0j, 2.0 + 0.0j])
    return [complex(z) for z in grid]


def _min_pm_norm_sq(X, Y) -> float:
    return min(spectral_norm(X + Y), spectral_norm(X - Y)) ** 2


def check_offdiag_product_upper(T, S, q, effort: Effort = DEFAULT,
                                seed: int = 0):
    """w_q([[O,T],[S,O]])^2 <= max(w(TS), w(ST)) + min_pm ||T pm S*||^2/q^2."""
    T = as_matrix(T, square=True)
    S = as_matrix(S, square=True)
    qf = _qf(q)
    if qf <= 0.0:
        raise ParamOutOfRange("product upper bound needs q > 0")
    O = np.zeros_like(T)
    M = block2x2(O, T, S, O)
    low = _west(M, qf, effort, _subseed(seed, "odprod"))
    wmax = max(classical_radius(T @ S), classical_radius(S @ T))
    rhs = float(np.sqrt(wmax + _min_pm_norm_sq(T, S.conj().T) / qf ** 2))
    return [_report("offdiag_product_mix_upper",
                    "check_offdiag_product_upper", "upper", low.value, rhs,
                    qf, {"w_max": wmax}, {"T": T, "S": S}, effort, seed)]


def check_buzano_uppers(P, Q, R, q, unitary_U=None,
                        effort: Effort = DEFAULT, seed: int = 0):
    """Upper bounds for w_q of operator combinations PR + R*Q (both
    signs), the unitary special case, and the four-block corner bound."""
    P = as_matrix(P, square=True)
    Q = as_matrix(Q, square=True)
    R = as_matrix(R, square=True)
    qf = _qf(q)
    if qf <= 0.0:
        raise ParamOutOfRange("these bounds need q > 0")
    n = P.shape[0]
    if unitary_U is None:
        unitary_U = gen_random("unitary", n, _subseed(seed, "bzU"))
    U = as_matrix(unitary_U, square=True)
    if spectral_norm(U.conj().T @ U - np.eye(n)) > 1e-10:
        raise NotUnitary("supplied matrix is not unitary within 1e-10")
    reports = []
    wit = {"P": P, "Q": Q, "R": R, "U": U}

    inner = max(classical_radius(P @ R @ R.conj().T @ Q),
                classical_radius(R.conj().T @ Q @ P @ R))
    tail = _min_pm_norm_sq(P @ R, Q.conj().T @ R) / qf ** 2
    rhs = 2.0 * float(np.sqrt(inner + tail))
    for sgn, tag in ((1.0, "plus"), (-1.0, "minus")):
        comb = P @ R + sgn * R.conj().T @ Q
        low = _west(comb, qf, effort, _subseed(seed, "bz" + tag))
        reports.append(_report(f"buzano_product_upper_{tag}",
                               "check_buzano_uppers", "upper", low.value,
                               rhs, qf, {"sign": sgn}, wit, effort, seed))

    inner_u = max(classical_radius(P @ Q), classical_radius(Q @ P))
    tail_u = _min_pm_norm_sq(P, Q.conj().T) / qf ** 2
    rhs_u = 2.0 * float(np.sqrt(inner_u + tail_u))
    for sgn, tag in ((1.0, "plus"), (-1.0, "minus")):
        comb = P @ U + sgn * U.conj().T @ Q
        low = _west(comb, qf, effort, _subseed(seed, "bzu" + tag))
        reports.append(_report(f"buzano_unitary_upper_{tag}",
                               "check_buzano_uppers", "upper", low.value,
                               rhs_u, qf, {"sign": sgn}, wit, effort, seed))

    # corner bound on a four-block matrix built from P, Q, R and U.
    Tfull = block2x2(P, Q, R, U)
    lo_p = _west(P, qf, effort, _subseed(seed, "bzcp"))
    lo_s = _west(U, qf, effort, _subseed(seed, "bzcs"))
    lhs = max(lo_p.value, lo_s.value)
    rhs_c = float(np.sqrt(classical_radius(Tfull @ Tfull)
                          + _min_pm_norm_sq(Tfull, Tfull.conj().T)
                          / qf ** 2))
    reports.append(_report("buzano_corner_upper", "check_buzano_uppers",
                           "upper", lhs, rhs_c, qf, {}, wit, effort, seed))
    return reports


def check_commutators(kind, T_or_P, X, q, effort: Effort = DEFAULT,
                      seed: int = 0):
    """Commutator bounds: against a projection, w_q(XP - PX) is controlled
    by w(X^2) and the self-adjointness defect of X; against a positive T,
    w_q(TX - XT) gains a factor ||T||."""
    A = as_matrix(T_or_P, square=True)
    X = as_matrix(X, square=True)
    qf = _qf(q)
    if qf <= 0.0:
        raise ParamOutOfRange("commutator bounds need q > 0")
    scale = max(float(np.linalg.norm(A)), 1.0)
    if kind == "projection":
        if (float(np.linalg.norm(A @ A - A)) > 1e-10 * scale
                or float(np.linalg.norm(A - A.conj().T)) > 1e-10 * scale):
            raise NotProjection("matrix is not an orthogonal projection")
        comm = X @ A - A @ X
        rhs = float(np.sqrt(classical_radius(X @ X)
                            + _min_pm_norm_sq(X, X.conj().T) / qf ** 2))
        name = "commutator_projection"
    elif kind == "positive":
        eig = herm_eig((A + A.conj().T) / 2.0, tol=1e-8)
        if (float(np.linalg.norm(A - A.conj().T)) > 1e-10 * scale
                or eig.eigenvalues.min() < -1e-10 * scale):
            raise NotPositive("matrix is not positive semidefinite")
        comm = A @ X - X @ A
        rhs = spectral_norm(A) * float(
            np.sqrt(classical_radius(X @ X)
                    + _min_pm_norm_sq(X, X.conj().T) / qf ** 2))
        name = "commutator_positive"
    else:
        raise ParamOutOfRange(f"unknown commutator kind {kind!r}")
    low = _west(comm, qf, effort, _subseed(seed, "comm" + kind))
    return [_report(name, "check_commutators", "upper", low.value, rhs, qf,
                    {"kind_" + kind: 1.0}, {"T_or_P": A, "X": X}, effort,
                    seed)]


def projection_dilation(C) -> np.ndarray:
    """The orthogonal projection [[C, D], [D, I-C]] with D = sqrt(C - C^2)
    dilating a positive contraction C."""
    C = as_matrix(C, square=True)
    D = psd_sqrt_clamped01(C)
    n = C.shape[0]
    return block2x2(C, D, D, np.eye(n, dtype=complex) - C)


CHECKS = {
    "check_norm_sandwich": check_norm_sandwich,
    "check_power_ineq": check_power_ineq,
    "check_basic_props": check_basic_props,
    "check_sandwich": check_sandwich,
    "check_alpha_r_upper": check_alpha_r_upper,
    "check_four_block_upper": check_four_block_upper,
    "check_nilpotent_upper": check_nilpotent_upper,
    "check_offdiag_bounds": check_offdiag_bounds,
    "check_lower_products": check_lower_products,
    "check_power_structure": check_power_structure,
    "check_vector_inequalities": check_vector_inequalities,
    "check_radius_gap": check_radius_gap,
    "check_offdiag_product_upper": check_offdiag_product_upper,
    "check_buzano_uppers": check_buzano_uppers,
    "check_commutators": check_commutators,
}


def replay(report: IneqReport):
    """Re-run a report's check from its stored witnesses and return the
    recomputed report with the same name and parameters."""
    func = CHECKS[report.check]
    sig = inspect.signature(func)
    kwargs = {}
    for pname in sig.parameters:
        if pname in report.witnesses:
            kwargs[pname] = report.witnesses[pname]
        elif pname in report.params:
            kwargs[pname] = report.params[pname]
    if "lam" in sig.parameters and "lam_re" in report.params:
        kwargs["lam"] = complex(report.params["lam_re"],
                                report.params["lam_im"])
    for key in list(report.params):
        if key.startswith("kind_"):
            kwargs["kind"] = key[len("kind_"):]
    if report.check == "check_vector_inequalities":
        for vec in ("a", "b", "c"):
            kwargs[vec] = report.witnesses[vec].reshape(-1)
    if report.check == "check_buzano_uppers":
        kwargs["unitary_U"] = report.witnesses["U"]
    kwargs["q"] = report.q
    kwargs["effort"] = report.effort
    kwargs["seed"] = report.seed
    for rep in func(**kwargs):
        if rep.name == report.name and rep.params == report.params:
            return rep
    raise KeyError(f"replay did not reproduce report {report.name!r}")
