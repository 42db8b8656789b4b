"""Verification sweep semantics and determinism."""

import json

import pytest

from qwrange.bounds import FAST
from qwrange.errors import ParamOutOfRange
from qwrange.sweep import SUITES, VerifyConfig, run_sweep, run_verify


def test_suite_registry_complete():
    assert len(SUITES) == 15
    assert all(name.startswith("check_") for name in SUITES)


def test_example_report_count(tmp_path):
    cfg = VerifyConfig(suites=("check_norm_sandwich",), dims=(2,),
                       qs=(0.5,), trials=5, seed=1,
                       out_path=str(tmp_path / "rep.json"))
    reports, summary = run_verify(cfg)
    assert len(reports) == 10  # two reports per trial
    assert summary["checks_run"] == 10
    assert summary["failures"] == 0
    assert "check_norm_sandwich" in summary["min_slack_per_suite"]
    payload = json.loads((tmp_path / "rep.json").read_text())
    assert len(payload["reports"]) == 10
    assert payload["summary"] == summary


def test_determinism_byte_identical(tmp_path):
    paths = []
    for k in range(2):
        p = tmp_path / f"rep{k}.json"
        cfg = VerifyConfig(suites=("check_norm_sandwich", "check_sandwich"),
                           dims=(2,), qs=(0.3, 0.8), trials=2, seed=7,
                           effort=FAST, out_path=str(p))
        run_verify(cfg)
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_config_validation():
    with pytest.raises(ParamOutOfRange):
        VerifyConfig(trials=0).validate()
    with pytest.raises(ParamOutOfRange):
        VerifyConfig(dims=(1,)).validate()
    with pytest.raises(ParamOutOfRange):
        VerifyConfig(dims=(9,)).validate()
    with pytest.raises(ParamOutOfRange):
        VerifyConfig(qs=(0.0,)).validate()
    with pytest.raises(ParamOutOfRange):
        VerifyConfig(qs=(1.1,)).validate()
    with pytest.raises(ParamOutOfRange):
        VerifyConfig(suites=("check_bogus",)).validate()
    VerifyConfig(suites=("all",), dims=(2, 3), qs=(0.5,), trials=1).validate()


def test_q_one_skips_degenerate_suites():
    cfg = VerifyConfig(suites=("check_nilpotent_upper",
                               "check_offdiag_bounds"),
                       dims=(2,), qs=(1.0,), trials=1, seed=0, effort=FAST)
    reports = run_sweep(cfg)
    assert reports == []  # preconditions exclude q = 1


def test_all_resolves_to_every_suite():
    cfg = VerifyConfig(suites=("all",))
    assert cfg.resolved_suites() == sorted(SUITES)
