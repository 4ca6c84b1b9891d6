import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from tacit_audit.cli import run_cli


def run(capsys, *args):
    code = run_cli([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_empty_model(tmp_path, capsys):
    p = tmp_path / "empty.dsl"
    p.write_text("model Empty\n")
    code, out, _ = run(capsys, p)
    assert code == 0
    assert json.loads(out)["findings"] == []


def test_violation_exit_code(capsys):
    code, _, _ = run(capsys, FIXTURES / "disjoint_violation.dsl", "--fail-on", "violation")
    assert code == 1


def test_fail_on_threshold(capsys):
    args = [FIXTURES / "order_unspecified.dsl", "--checks", "order_unspecified"]
    assert run(capsys, *args)[0] == 0
    assert run(capsys, *args, "--fail-on", "question")[0] == 1
    assert run(capsys, *args, "--fail-on", "never")[0] == 0


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.dsl"
    p.write_text("model M\nvar x bool\n")
    code, out, err = run(capsys, p)
    assert code == 2 and out == ""
    assert "2:" in err and "parse error" in err and "':'" in err


def test_validation_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.dsl"
    p.write_text("model M\nstate A\ntrans A -> Ghost\n")
    code, _, err = run(capsys, p)
    assert code == 2 and "unknown state Ghost" in err


@pytest.mark.parametrize("args", [
    ["--budget", "-1"], ["--seed", "x"], ["--checks", "bogus"], ["--format", "xml"],
    ["--oracle-url", "nope"], ["--max-configs", "0"], ["--dictionary", "/nonexistent"],
])
def test_usage_errors(args, capsys):
    assert run(capsys, FIXTURES / "webstore.dsl", *args)[0] == 2


def test_missing_model_file(tmp_path, capsys):
    assert run(capsys, tmp_path / "absent.dsl")[0] == 2


def test_partial_exit_code(tmp_path, capsys):
    p = tmp_path / "big.dsl"
    p.write_text("model Big\nvar a: int[0..99]\nvar b: int[0..99]\nstate A\n")
    assert run(capsys, p, "--max-configs", "100")[0] == 3
    assert run(capsys, p, "--max-configs", "100", "--allow-partial")[0] == 0


def test_out_file_and_relative_paths(tmp_path, capsys):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, FIXTURES / "disjoint_violation.dsl", "--out", out_file, "--fail-on", "never")
    assert code == 0 and out == ""
    data = json.loads(out_file.read_text())
    assert all(not f["location"]["file"].startswith("/") for f in data["findings"])


def test_text_format(capsys):
    code, out, _ = run(capsys, FIXTURES / "disjoint_violation.dsl", "--format", "text")
    assert code == 1 and "VIOLATION" in out


def test_checks_run_lists_selection(capsys):
    _, out, _ = run(capsys, FIXTURES / "webstore.dsl", "--checks", "atomicity,explore")
    assert json.loads(out)["checksRun"] == ["validate", "atomicity"]
    _, out, _ = run(capsys, FIXTURES / "webstore.dsl", "--checks", "unreachable_composites")
    assert json.loads(out)["checksRun"] == ["validate", "explore", "unreachable_composites"]


def test_oracle_url_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("TACIT_ORACLE_URL", "not a url")
    assert run(capsys, FIXTURES / "webstore.dsl")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tacit_audit", str(FIXTURES / "webstore.dsl")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["modelName"] == "WebStore"
