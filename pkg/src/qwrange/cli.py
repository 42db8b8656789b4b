"""Command-line front end.

Subcommands: ``compute`` (w_q of one matrix, JSON on stdout), ``range``
(point cloud and, for 2x2 input, the exact boundary, as CSV), and
``verify`` (inequality sweep with a JSON report file).

Exit codes: 0 success, 1 failed checks (verify), 2 malformed input or
config, 3 dimension error, 4 unwritable output path.  Diagnostics go to
stderr only.  The environment variable QRAD_EFFORT in {fast, default,
high} selects the estimator effort preset.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import io, radius, sweep
from .bounds import DEFAULT, Effort, effort_preset
from .errors import (BadDimension, DimensionMismatch, DimensionTooSmall,
                     ParamOutOfRange, QwrangeError)

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_MALFORMED = 2
EXIT_DIMENSION = 3
EXIT_UNWRITABLE = 4

_SAMPLE_COUNTS = {"fast": 10_000, "default": 100_000, "high": 1_000_000}


def _env_effort_name() -> str:
    name = os.environ.get("QRAD_EFFORT", "default").strip().lower()
    if name not in ("fast", "default", "high"):
        raise ParamOutOfRange(f"QRAD_EFFORT must be fast/default/high, "
                              f"got {name!r}")
    return name


def _parse_q(text: str) -> float:
    try:
        z = complex(text.replace(" ", ""))
    except ValueError:
        raise ParamOutOfRange(f"cannot parse q value {text!r}") from None
    if z.imag != 0.0 or z.real < 0.0:
        print(f"note: q = {text} reduced to its modulus {abs(z):.17g}; "
              "w_q depends on q only through |q|", file=sys.stderr)
    q = abs(z)
    if not 0.0 < q <= 1.0:
        raise ParamOutOfRange(f"|q| = {q:.17g} outside (0, 1]")
    return q


def _vec_json(v: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v).reshape(-1)]


def run_compute(matrix_path, q, method="auto", effort=DEFAULT, seed=0,
                n_samples=None, out=sys.stdout) -> int:
    T = io.load_matrix(matrix_path)
    n = T.shape[0]
    if method == "auto":
        method = "exact2x2" if n == 2 else "optimize"
    if method == "exact2x2":
        if n != 2:
            raise BadDimension("method exact2x2 requires a 2x2 matrix")
        value, _ = radius.wq_2x2_exact(T, q)
        est = radius.estimate_wq(T, q, restarts=effort.restarts,
                                 max_iter=effort.max_iter, seed=seed)
        witness = est.witness
    elif method == "optimize":
        est = radius.estimate_wq(T, q, restarts=effort.restarts,
                                 max_iter=effort.max_iter, seed=seed)
        value, witness = est.value, est.witness
    elif method == "sample":
        if n_samples is None:
            n_samples = _SAMPLE_COUNTS["default"]
        est = radius.sample_wq(T, q, n_samples, seed)
        value, witness = est.value, est.witness
    else:
        raise ParamOutOfRange(f"unknown method {method!r}")
    payload = {"value": value, "method": method,
               "witness_x": _vec_json(witness.x),
               "witness_y": _vec_json(witness.y), "q": q}
    json.dump(payload, out)
    out.write("\n")
    return EXIT_OK


def run_range(matrix_path, q, n_points, seed, out_path) -> int:
    T = io.load_matrix(matrix_path)
    cloud = radius.range_cloud(T, q, n_points, seed)
    try:
        io.write_cloud_csv(out_path, cloud)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    return EXIT_OK


def run_verify(config: sweep.VerifyConfig) -> int:
    try:
        config.validate()
    except (ParamOutOfRange, QwrangeError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        reports, summary = sweep.run_verify(config)
    except OSError as exc:
        print(f"error: cannot write {config.out_path}: {exc}",
              file=sys.stderr)
        return EXIT_UNWRITABLE
    print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK if summary["failures"] == 0 else EXIT_FAILED_CHECKS


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qwrange")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute w_q of a matrix")
    c.add_argument("--matrix", required=True)
    c.add_argument("--q", required=True)
    c.add_argument("--method", default="auto",
                   choices=("auto", "exact2x2", "optimize", "sample"))
    c.add_argument("--restarts", type=int, default=None)
    c.add_argument("--iters", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("range", help="sample the q-numerical range to CSV")
    r.add_argument("--matrix", required=True)
    r.add_argument("--q", required=True)
    r.add_argument("--points", type=int, required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="run the inequality sweep")
    v.add_argument("--suite", default="all",
                   help="check name, comma list, or 'all'")
    v.add_argument("--dims", default="2,3")
    v.add_argument("--qs", default="0.1,0.3,0.5,0.7,0.9")
    v.add_argument("--trials", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", required=True)
    return ap


def _ints(text: str) -> tuple:
    return tuple(int(p) for p in text.split(",") if p != "")


def _floats(text: str) -> tuple:
    return tuple(float(p) for p in text.split(",") if p != "")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        effort_name = _env_effort_name()
        effort = effort_preset(effort_name)
        if args.command == "compute":
            q = _parse_q(args.q)
            if args.restarts is not None or args.iters is not None:
                effort = Effort(args.restarts or effort.restarts,
                                args.iters or effort.max_iter)
            return run_compute(args.matrix, q, method=args.method,
                               effort=effort, seed=args.seed,
                               n_samples=_SAMPLE_COUNTS[effort_name])
        if args.command == "range":
            q = _parse_q(args.q)
            return run_range(args.matrix, q, args.points, args.seed,
                             args.out)
        config = sweep.VerifyConfig(
            suites=tuple(args.suite.split(",")), dims=_ints(args.dims),
            qs=_floats(args.qs), trials=args.trials, seed=args.seed,
            effort=effort, out_path=args.out)
        return run_verify(config)
    except (DimensionTooSmall, BadDimension, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (io.MalformedInput, ParamOutOfRange, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except QwrangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
