import json

import pytest

from exceptional_primes import cli
from exceptional_primes.config import fixture_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_forms(capsys):
    code, out, _ = run(capsys, "forms", "-36")
    assert code == cli.EXIT_OK
    assert out.split("\n")[:2] == ["(1, 0, 9)", "(2, 2, 5)"]
    code, out, _ = run(capsys, "forms", "-36", "--json")
    assert json.loads(out)["forms"] == [[1, 0, 9], [2, 2, 5]]


def test_forms_rejects_positive_discriminant(capsys):
    code, _, err = run(capsys, "forms", "5")
    assert code == cli.EXIT_INVALID and "error" in err


def test_phi(capsys):
    code, out, _ = run(capsys, "phi", "--ell", "3", "--order", "12", "--json")
    doc = json.loads(out)
    assert code == cli.EXIT_OK
    assert doc["conclusion"] == "IrreducibleAllPGe5"
    assert doc["legal_orders"] == [2, 3, 4, 6, 12]


def test_phi_illegal_order(capsys):
    code, _, err = run(capsys, "phi", "--ell", "5", "--order", "12")
    assert code == cli.EXIT_INVALID
    assert "not possible" in err


def test_traces_json(capsys):
    code, out, _ = run(capsys, "traces", "--config", str(fixture_path("q_i")), "--json")
    assert code == cli.EXIT_OK
    rows = {r["ell"]: [i["trace"] for i in r["ideals"]] for r in json.loads(out)["traces"]}
    assert sorted(rows["5"]) == ["-2", "1"] and rows["7"] == ["6"]


def test_candidates_json(capsys):
    code, out, _ = run(capsys, "candidates", "--config", str(fixture_path("q_sqrt2")), "--json")
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    statuses = {s["p"]: s["status"] for s in doc["statuses"]}
    assert statuses.pop("13") == "witnessed_exceptional"
    assert set(statuses.values()) == {"eliminated"}


def test_ells_override(capsys):
    code, out, _ = run(capsys, "sieve", "--config", str(fixture_path("q_i")), "--ells", "5", "--json")
    assert code == cli.EXIT_OK
    assert [s["ell"] for s in json.loads(out)["sieve"]] == ["5"]


def test_bad_config_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("[field]\npoly = [1, 0, 1]\n")
    code, _, err = run(capsys, "candidates", "--config", str(path))
    assert code == cli.EXIT_INVALID
    assert "field.disc" in err


def test_missing_config_exits_2(capsys, tmp_path):
    code, _, _ = run(capsys, "traces", "--config", str(tmp_path / "nope.toml"))
    assert code == cli.EXIT_INVALID


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["phi", "--ell", "3"])
    assert info.value.code == 2


def test_no_color(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, out, _ = run(capsys, "candidates", "--config", str(fixture_path("q_sqrt2")))
    assert code == cli.EXIT_OK
    assert "EXCEPTIONAL" in out and "\x1b[" not in out
