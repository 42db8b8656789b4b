"""Verification sweep: drive every inequality check over seeded ensembles.

Each suite is named after its check function.  For a given (dim, q,
trial) cell the suite draws its inputs deterministically from the
counter-based generators in :mod:`qwrange.core`, so an identical
VerifyConfig always produces a byte-identical report file.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass

import numpy as np

from . import bounds, io
from .bounds import DEFAULT, Effort
from .core import gen_random, rng_stream
from .errors import ParamOutOfRange


def _cell_seed(seed: int, suite: str, dim: int, q: float, trial: int) -> int:
    label = f"{suite}:{dim}:{q:.17g}:{trial}"
    return (int(seed) * 0x9E3779B9 + zlib.crc32(label.encode())) & 0x7FFFFFFF


def _mats(kind: str, dim: int, s: int, count: int):
    return [gen_random(kind, dim, s + 11 * (k + 1)) for k in range(count)]


def _suite_norm_sandwich(dim, q, s, effort):
    (T,) = _mats("ginibre", dim, s, 1)
    return bounds.check_norm_sandwich(T, q, effort=effort, seed=s)


def _suite_power_ineq(dim, q, s, effort):
    (T,) = _mats("ginibre", dim, s, 1)
    n = 2 + s % 3
    return bounds.check_power_ineq(T, q, n=n, effort=effort, seed=s)


def _suite_basic_props(dim, q, s, effort):
    T1, T2, T3, T4 = _mats("ginibre", dim, s, 4)
    rng = rng_stream(s, 0x535750)
    theta = float(2.0 * np.pi * rng.random())
    lam = complex(*(2.0 * rng.random(2) - 1.0)) + 0.25
    return bounds.check_basic_props(T1, T2, T3, T4, q, theta=theta, lam=lam,
                                    effort=effort, seed=s)


def _suite_sandwich(dim, q, s, effort):
    A, B = _mats("ginibre", dim, s, 2)
    out = []
    for kind in ("diag", "sym", "skew"):
        out += bounds.check_sandwich(kind, A, B, q, effort=effort, seed=s)
    return out


def _suite_alpha_r(dim, q, s, effort):
    (S,) = _mats("ginibre", dim, s, 1)
    rng = rng_stream(s, 0x414C52)
    alpha = float(rng.random())
    r = float(1.0 + 2.0 * rng.random())
    return bounds.check_alpha_r_upper(S, q, alpha=alpha, r=r, effort=effort,
                                      seed=s)


def _suite_four_block(dim, q, s, effort):
    P, Q, R, S = _mats("ginibre", dim, s, 4)
    return bounds.check_four_block_upper(P, Q, R, S, q, effort=effort,
                                         seed=s)


def _suite_nilpotent(dim, q, s, effort):
    if q >= 1.0:
        return []
    (T,) = _mats("nilpotent_sq_zero", dim, s, 1)
    return bounds.check_nilpotent_upper(T, q, effort=effort, seed=s)


def _suite_offdiag(dim, q, s, effort):
    if not 0.0 < q < 1.0:
        return []
    T2, T3 = _mats("ginibre", dim, s, 2)
    return bounds.check_offdiag_bounds(T2, T3, q, effort=effort, seed=s)


def _suite_lower_products(dim, q, s, effort):
    T2, T3 = _mats("ginibre", dim, s, 2)
    n = 1 + s % 3
    return bounds.check_lower_products(T2, T3, q, n=n, effort=effort, seed=s)


def _suite_power_structure(dim, q, s, effort):
    T1, T2 = _mats("ginibre", dim, s, 2)
    n = 1 + s % 5
    return bounds.check_power_structure(T1, T2, q, n=n, effort=effort,
                                        seed=s)


def _suite_vector(dim, q, s, effort):
    (P,) = _mats("psd", dim, s, 1)
    (G,) = _mats("ginibre", dim, s + 7, 1)
    rng = rng_stream(s, 0x564543)
    a, b, c = (rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
               for _ in range(3))
    t = float(2.0 * rng.random() - 1.0)
    alpha = float(rng.random())
    out = bounds.check_vector_inequalities(P, a, b, c, t=t, alpha=alpha,
                                           effort=effort, seed=s)
    out += bounds.check_vector_inequalities(G, a, b, c, t=t, alpha=alpha,
                                            effort=effort, seed=s)
    return out


def _suite_radius_gap(dim, q, s, effort):
    (T,) = _mats("ginibre", dim, s, 1)
    return bounds.check_radius_gap(T, q, effort=effort, seed=s)


def _suite_offdiag_product(dim, q, s, effort):
    T, S = _mats("ginibre", dim, s, 2)
    return bounds.check_offdiag_product_upper(T, S, q, effort=effort, seed=s)


def _suite_buzano(dim, q, s, effort):
    P, Q, R = _mats("ginibre", dim, s, 3)
    return bounds.check_buzano_uppers(P, Q, R, q, effort=effort, seed=s)


def _suite_commutators(dim, q, s, effort):
    (Pr,) = _mats("projection", dim, s, 1)
    (Ps,) = _mats("psd", dim, s + 3, 1)
    (X,) = _mats("ginibre", dim, s + 5, 1)
    out = bounds.check_commutators("projection", Pr, X, q, effort=effort,
                                   seed=s)
    out += bounds.check_commutators("positive", Ps, X, q, effort=effort,
                                    seed=s)
    return out


SUITES = {
    "check_norm_sandwich": _suite_norm_sandwich,
    "check_power_ineq": _suite_power_ineq,
    "check_basic_props": _suite_basic_props,
    "check_sandwich": _suite_sandwich,
    "check_alpha_r_upper": _suite_alpha_r,
    "check_four_block_upper": _suite_four_block,
    "check_nilpotent_upper": _suite_nilpotent,
    "check_offdiag_bounds": _suite_offdiag,
    "check_lower_products": _suite_lower_products,
    "check_power_structure": _suite_power_structure,
    "check_vector_inequalities": _suite_vector,
    "check_radius_gap": _suite_radius_gap,
    "check_offdiag_product_upper": _suite_offdiag_product,
    "check_buzano_uppers": _suite_buzano,
    "check_commutators": _suite_commutators,
}


@dataclass
class VerifyConfig:
    suites: tuple = ("all",)
    dims: tuple = (2,)
    qs: tuple = (0.5,)
    trials: int = 1
    seed: int = 0
    effort: Effort = DEFAULT
    out_path: str | None = None

    def resolved_suites(self) -> list:
        names = list(self.suites)
        if names == ["all"] or names == ("all",) or "all" in names:
            return sorted(SUITES)
        for name in names:
            if name not in SUITES:
                raise ParamOutOfRange(f"unknown suite {name!r}")
        return sorted(set(names))

    def validate(self) -> None:
        if not self.dims or any(d < 2 or d > 8 for d in self.dims):
            raise ParamOutOfRange("dims must be within {2..8}")
        if not self.qs or any(not 0.0 < q <= 1.0 for q in self.qs):
            raise ParamOutOfRange("qs must lie in (0, 1]")
        if self.trials < 1:
            raise ParamOutOfRange("trials must be >= 1")
        self.resolved_suites()


def run_sweep(config: VerifyConfig) -> list:
    """All reports for the config, in deterministic sorted order."""
    config.validate()
    reports = []
    for suite in config.resolved_suites():
        driver = SUITES[suite]
        for dim in sorted(config.dims):
            for q in sorted(config.qs):
                for trial in range(config.trials):
                    s = _cell_seed(config.seed, suite, dim, q, trial)
                    for rep in driver(dim, float(q), s, config.effort):
                        reports.append(((suite, dim, float(q), trial,
                                         rep.name), rep))
    reports.sort(key=lambda kr: kr[0])
    return [rep for _, rep in reports]


def summarize(reports) -> dict:
    min_slack: dict = {}
    failures = 0
    for rep in reports:
        if not rep.passed:
            failures += 1
        prev = min_slack.get(rep.check)
        if prev is None or rep.slack < prev:
            min_slack[rep.check] = rep.slack
    return {"checks_run": len(reports), "failures": failures,
            "min_slack_per_suite": dict(sorted(min_slack.items()))}


def run_verify(config: VerifyConfig):
    """Run the sweep, optionally write the report file, return
    (reports, summary)."""
    reports = run_sweep(config)
    summary = summarize(reports)
    if config.out_path is not None:
        payload = {"reports": [io.report_to_json(r) for r in reports],
                   "summary": summary}
        with open(config.out_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return reports, summary
