"""Strict JSON/CSV serialization for matrices, reports, and point clouds.

Matrix files are JSON objects ``{"n": int, "data": [[re, im], ...]}`` with
n^2 row-major entries.  The parser is strict: non-finite values, wrong
entry counts, and malformed entries are rejected with MalformedInput.
Witness matrices inside reports reuse the same encoding plus an optional
``"m"`` column count for non-square arrays (vector witnesses).
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import QwrangeError


class MalformedInput(QwrangeError):
    pass


def _reject_constant(token):
    raise MalformedInput(f"non-finite JSON token {token!r}")


def loads_strict(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    obj = {"n": int(m.shape[0]),
           "data": [[float(z.real), float(z.imag)] for z in m.reshape(-1)]}
    if m.shape[1] != m.shape[0]:
        obj["m"] = int(m.shape[1])
    return obj


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise MalformedInput("matrix object must be a JSON object")
    extra = set(obj) - {"n", "m", "data"}
    if extra:
        raise MalformedInput(f"unexpected matrix keys {sorted(extra)}")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedInput("'n' must be a positive integer")
    cols = obj.get("m", n)
    if not isinstance(cols, int) or isinstance(cols, bool) or cols < 1:
        raise MalformedInput("'m' must be a positive integer")
    data = obj.get("data")
    if not isinstance(data, list) or len(data) != n * cols:
        raise MalformedInput(f"'data' must list exactly {n * cols} entries")
    out = np.empty(n * cols, dtype=np.complex128)
    for k, entry in enumerate(data):
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(v, (int, float))
                           and not isinstance(v, bool) for v in entry)):
            raise MalformedInput(f"entry {k} is not a [re, im] pair")
        re, im = float(entry[0]), float(entry[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise MalformedInput(f"entry {k} is not finite")
        out[k] = complex(re, im)
    return out.reshape(n, cols)


def load_matrix(path: str) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    obj = loads_strict(text)
    if isinstance(obj, dict) and "m" in obj:
        raise MalformedInput("matrix input files must be square ('n' only)")
    return matrix_from_json(obj)


def save_matrix(path: str, m: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(m), fh)
        fh.write("\n")


def report_to_json(rep) -> dict:
    return {
        "name": rep.name,
        "check": rep.check,
        "class": rep.cls,
        "q": rep.q,
        "params": {k: float(v) for k, v in sorted(rep.params.items())},
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "slack": rep.slack,
        "pass": rep.passed,
        "witness": {k: matrix_to_json(v)
                    for k, v in sorted(rep.witnesses.items())},
        "effort": {"restarts": rep.effort.restarts,
                   "max_iter": rep.effort.max_iter},
        "seed": rep.seed,
        "tol": rep.tol,
    }


def report_from_json(obj):
    from .bounds import Effort, IneqReport

    witnesses = {k: matrix_from_json(v) for k, v in obj["witness"].items()}
    return IneqReport(
        name=obj["name"], check=obj["check"], cls=obj["class"],
        lhs=float(obj["lhs"]), rhs=float(obj["rhs"]),
        slack=float(obj["slack"]), q=float(obj["q"]),
        params=dict(obj["params"]), witnesses=witnesses,
        effort=Effort(int(obj["effort"]["restarts"]),
                      int(obj["effort"]["max_iter"])),
        seed=int(obj["seed"]), tol=float(obj["tol"]),
        passed=bool(obj["pass"]),
    )


def write_cloud_csv(path: str, cloud) -> None:
    """Point cloud as CSV rows "re,im,kind", samples then boundary."""
    lines = ["re,im,kind"]
    for z in cloud.points:
        lines.append(f"{z.real:.17g},{z.imag:.17g},sample")
    if cloud.boundary is not None:
        for z in cloud.boundary:
            lines.append(f"{z.real:.17g},{z.imag:.17g},boundary")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
