"""Command line entry points, exit codes, and data output modes."""

import json

import pytest

from tllab.cli import main


def test_solve_small_chain_exits_clean(capsys):
    code = main(["solve", "--sites", "2", "--spin", "1/2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "total degeneracy 4 / dimension 4" in out


def test_solve_json_stdout_is_pure_json(capsys):
    code = main(["solve", "--sites", "2", "--spin", "1/2", "--json", "-"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["chain"] == "open"
    assert payload["dimension"] == 4


def test_solve_csv_file(tmp_path, capsys):
    target = tmp_path / "lines.csv"
    code = main(
        ["solve", "--sites", "2", "--spin", "1/2", "--csv", str(target)]
    )
    capsys.readouterr()
    assert code == 0
    lines = target.read_text().strip().splitlines()
    assert len(lines) >= 3
    assert lines[0].split(",")[0] == "chain"


def test_solve_closed_chain(capsys):
    code = main(
        ["solve", "--chain", "closed", "--sites", "2", "--spin", "1/2", "--json", "-"]
    )
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["chain"] == "closed"
    assert payload["total_degeneracy"] == payload["dimension"]


def test_solve_rejects_bad_spin(capsys):
    code = main(["solve", "--sites", "2", "--spin", "2/3"])
    err = capsys.readouterr().err
    assert code == 2
    assert "error" in err.lower()


def test_reproduce_single_table(capsys):
    code = main(["reproduce", "--table", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out
    assert "FAIL" not in out


def test_reproduce_json_payload(capsys):
    code = main(["reproduce", "--table", "5", "--json", "-"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["number"] == 5
    assert payload["passed"] is True


def test_verify_single_suite(capsys):
    code = main(["verify", "--suite", "tl-algebra"])
    out = capsys.readouterr().out
    assert code == 0
    assert "tl-algebra" in out
    assert "pass" in out.lower()


def test_verify_json_stdout(capsys):
    code = main(["verify", "--suite", "boundary", "--json", "-"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    names = [s["name"] for s in payload["suites"]]
    assert names == ["boundary"]


def test_seed_env_variable_sets_default(monkeypatch):
    from tllab.cli import _default_seed

    monkeypatch.setenv("TL_LAB_SEED", "777")
    assert _default_seed() == 777
    monkeypatch.delenv("TL_LAB_SEED")
    assert _default_seed() == 1234
    monkeypatch.setenv("TL_LAB_SEED", "not-a-number")
    assert _default_seed() == 1234


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as info:
        main(["solve"])
    assert info.value.code == 2
