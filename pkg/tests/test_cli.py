import json
import subprocess
import sys

import pytest

from tautilt.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, run_command


def test_explore_pentagon(capsys):
    assert run_command(["explore", "--example", "a2-path"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Finite, 5 nodes, 5 edges" in out
    assert "FAIL" not in out


def test_budget_exit_code(capsys):
    assert run_command(["explore", "--example", "sym-local", "--budget", "40"]) == EXIT_BUDGET
    assert "BudgetExhausted, 40 nodes" in capsys.readouterr().out


def test_needs_whole_set(capsys):
    assert run_command(["delta", "--example", "sym-local", "--budget", "10"]) == EXIT_BUDGET


def test_partial_fan(capsys):
    code = run_command(["fan", "--example", "jacobian-b", "--max-depth", "2", "--samples", "50"])
    assert code == EXIT_BUDGET
    assert "[pass] every g-vector has coordinate sum >= 0" in capsys.readouterr().out


def test_usage_errors(tmp_path, capsys):
    assert run_command([]) == EXIT_USAGE
    assert run_command(["explore", "--example", "nope"]) == EXIT_USAGE
    assert run_command(["explore", "--example", "a2-path", "--budget", "0"]) == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["1"], "arrows": [{"name": "a", "from": "1", "to": "9"}], "relations": []}')
    assert run_command(["explore", "--algebra", str(bad)]) == EXIT_USAGE
    assert run_command(["explore", "--algebra", str(tmp_path / "missing.json")]) == EXIT_USAGE
    loop = tmp_path / "loop.json"
    loop.write_text('{"vertices": ["1"], "arrows": [{"name": "a", "from": "1", "to": "1"}], "relations": []}')
    assert run_command(["explore", "--algebra", str(loop)]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "error:" in err


def test_algebra_file(tmp_path, capsys):
    f = tmp_path / "a2.json"
    f.write_text('{"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}], "relations": []}')
    assert run_command(["delta", "--algebra", str(f)]) == EXIT_OK
    assert "reduced homology (0, Z)" in capsys.readouterr().out


def test_json_is_byte_identical(capsys):
    run_command(["explore", "--example", "a3-rel", "--json"])
    first = capsys.readouterr().out
    run_command(["explore", "--example", "a3-rel", "--json"])
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["verdict"] == "Finite" and len(doc["nodes"]) == 12


def test_out_prefix(tmp_path, capsys):
    prefix = tmp_path / "a3"
    assert run_command(["fan", "--example", "a3-rel", "--out", str(prefix), "--json", "--samples", "100"]) == EXIT_OK
    assert json.loads((tmp_path / "a3.json").read_text())["n"] == 3
    assert (tmp_path / "a3.off").read_text().startswith("OFF")


def test_dot(capsys):
    assert run_command(["explore", "--example", "a2-path", "--dot"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("digraph hasse {")


@pytest.mark.parametrize("cmd", ["delta", "modules", "probe-order", "report"])
def test_commands_pass_on_a3(cmd, capsys):
    assert run_command([cmd, "--example", "a3-rel", "--samples", "200"]) == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out


def test_report_json(capsys):
    assert run_command(["report", "--example", "a3-rel", "--json", "--samples", "200"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["delta"]["chi"] == 2 and doc["delta"]["homology"] == "(0, 0, Z)"
    assert all(doc["checks"].values())


def test_validate_flag(capsys):
    assert run_command(["explore", "--example", "a3-rel", "--validate"]) == EXIT_OK


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tautilt", "explore", "--example", "one-simple"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == EXIT_OK
    assert "Finite, 2 nodes, 1 edges" in proc.stdout
    assert proc.stderr.startswith("time ")
    proc = subprocess.run([sys.executable, "-m", "tautilt", "bogus"], capture_output=True, text=True, check=False)
    assert proc.returncode == EXIT_USAGE
