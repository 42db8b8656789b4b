"""Strict serialization round-trips and rejection tests."""

import json

import numpy as np
import pytest

from qwrange import bounds, io
from qwrange.core import gen_random
from qwrange.radius import range_cloud


def test_matrix_round_trip(tmp_path):
    m = gen_random("ginibre", 3, 0)
    path = tmp_path / "m.json"
    io.save_matrix(str(path), m)
    back = io.load_matrix(str(path))
    assert np.array_equal(back, m)


@pytest.mark.parametrize("payload", [
    "not json",
    "[1, 2]",
    '{"n": 2}',
    '{"n": 2, "data": [[0,0],[1,0],[0,0]]}',
    '{"n": 2, "data": [[0,0],[1,0],[0,0],[0]]}',
    '{"n": 2, "data": [[0,0],[1,0],[0,0],"x"]}',
    '{"n": 2, "data": [[0,0],[1,0],[0,0],[NaN,0]]}',
    '{"n": 2, "data": [[0,0],[1,0],[0,0],[Infinity,0]]}',
    '{"n": 0, "data": []}',
    '{"n": 2.0, "data": [[0,0],[0,0],[0,0],[0,0]]}',
    '{"n": 2, "data": [[0,0],[0,0],[0,0],[0,0]], "extra": 1}',
    '{"n": 2, "m": 1, "data": [[0,0],[0,0]]}',
])
def test_matrix_rejections(tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(payload)
    with pytest.raises(io.MalformedInput):
        io.load_matrix(str(path))


def test_missing_file():
    with pytest.raises(io.MalformedInput):
        io.load_matrix("/nonexistent/nope.json")


def test_vector_witness_round_trip():
    v = np.arange(3).astype(complex).reshape(-1, 1) + 0.5j
    obj = io.matrix_to_json(v)
    assert obj["m"] == 1
    assert np.array_equal(io.matrix_from_json(obj), v)


def test_report_round_trip():
    rep = bounds.check_norm_sandwich(gen_random("ginibre", 2, 1), 0.6,
                                     seed=3)[0]
    obj = io.report_to_json(rep)
    text = json.dumps(obj)
    back = io.report_from_json(json.loads(text))
    assert back.name == rep.name and back.check == rep.check
    assert back.lhs == rep.lhs and back.rhs == rep.rhs
    assert back.passed == rep.passed
    assert np.array_equal(back.witnesses["T"], rep.witnesses["T"])
    # and the deserialized report still replays
    again = bounds.replay(back)
    assert abs(again.lhs - rep.lhs) < 1e-9


def test_cloud_csv(tmp_path):
    cloud = range_cloud(np.array([[0, 1], [0, 0]], dtype=complex), 0.6,
                        100, seed=2)
    path = tmp_path / "cloud.csv"
    io.write_cloud_csv(str(path), cloud)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "re,im,kind"
    assert len(lines) == 1 + 100 + 720
    kinds = {line.rsplit(",", 1)[1] for line in lines[1:]}
    assert kinds == {"sample", "boundary"}
    for line in lines[1:]:
        re_s, im_s, kind = line.split(",")
        float(re_s), float(im_s)  # parses strictly
