"""Command line: deterministic JSON reports and exit-code contract."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from forge.cli import main

_EXAMPLES = Path(__file__).resolve().parent.parent / "examples"
Z2 = str(_EXAMPLES / "z2.json")
S2 = str(_EXAMPLES / "s2.json")


@pytest.fixture()
def runner():
    return CliRunner()


def test_group_define_reports_reflections(runner):
    res = runner.invoke(main, ["group", "define", "--group", Z2])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["order"] == 2 and rep["reflections"] == 1


def test_group_stock_names(runner):
    res = runner.invoke(main, ["group", "define", "--group", "S3"])
    assert res.exit_code == 0
    assert json.loads(res.output)["order"] == 6


def test_rca_mul_defining_relation(runner):
    res = runner.invoke(main, ["rca", "mul", "--group", Z2,
                               "--a", "u1", "--b", "y1"])
    assert res.exit_code == 0
    assert res.output.strip() == "y1*u1 + t - 2*c1*s1"


def test_dunkl_apply(runner):
    res = runner.invoke(main, ["dunkl", "apply", "--group", Z2,
                               "--op", "u1", "--poly", "y1^2"])
    assert res.exit_code == 0
    assert res.output.strip() == "(2*t)*y1"


def test_verify_exit_zero_and_conventions(runner):
    res = runner.invoke(main, ["verify", "pbw", "--group", Z2,
                               "--triples", "3", "--seed", "1"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["ok"] is True
    assert rep["conventions"]["commutator_sign"] == -1
    assert "flatness_sign" in rep["conventions"]


def test_verify_reports_are_deterministic(runner):
    args = ["verify", "dunkl-embed", "--group", S2,
            "--pairs", "4", "--seed", "7"]
    out1 = runner.invoke(main, args).output
    out2 = runner.invoke(main, args).output
    assert out1 == out2


def test_bad_config_exits_two(runner, tmp_path):
    res = runner.invoke(main, ["rca", "mul",
                               "--group", str(_EXAMPLES / "nope.json"),
                               "--a", "u1", "--b", "y1"])
    assert res.exit_code == 2
    broken = tmp_path / "broken.json"
    broken.write_text('{"cyclotomic_order": 2, "dim": 1, "generators": []}')
    res = runner.invoke(main, ["group", "define", "--group", str(broken)])
    assert res.exit_code == 2


def test_failing_verification_exits_one(runner, monkeypatch):
    import forge.cli as climod

    def fake(*a, **k):
        return {"name": "pbw", "ok": False, "seed": 0, "checks": []}

    monkeypatch.setattr(climod.suites, "verify_pbw", fake)
    res = runner.invoke(main, ["verify", "pbw", "--group", Z2])
    assert res.exit_code == 1


def test_json_file_output(runner, tmp_path):
    out = tmp_path / "rep.json"
    res = runner.invoke(main, ["verify", "dunkl-commute", "--group", S2,
                               "--json", str(out)])
    assert res.exit_code == 0
    assert json.loads(out.read_text())["ok"] is True


def test_jets_flat_check(runner):
    res = runner.invoke(main, ["jets", "flat-check", "--dim", "1",
                               "--order", "3", "--op", "x1*d1", "--paths", "2"])
    assert res.exit_code == 0
    assert json.loads(res.output)["ok"] is True
