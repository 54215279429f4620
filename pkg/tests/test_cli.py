import json
import subprocess
import sys

import pytest

from autshift.cli import main

KEYS = ["command", "params", "seed", "results", "verdict", "witnesses", "truncation", "runtime_ms"]


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_verify_hedlund(capsys):
    code, doc, _ = run_json(capsys, "verify", "examples/hedlund.scheme")
    assert code == 0
    assert list(doc) == KEYS
    assert doc["results"][0]["status"] == "ok"


def test_verify_overlapping(capsys):
    code, doc, _ = run_json(capsys, "verify", "examples/overlapping.scheme")
    assert code == 1
    assert doc["verdict"] == "fail" and doc["witnesses"] == ["00100"]


def test_proximality_report(capsys):
    code, doc, _ = run_json(capsys, "proximality", "--k", "3..6", "--m", "1..2")
    assert code == 0
    assert {(r["k"], r["m"]) for r in doc["results"]} == {(k, m) for k in range(3, 7) for m in (1, 2)}
    row = next(r for r in doc["results"] if (r["k"], r["m"]) == (3, 1))
    assert row["bound"] == "1/16" and row["max_distance"] == "1/32"


def test_apply_and_act(capsys):
    code, doc, _ = run_json(capsys, "apply", "hedlund", "--config", '(0)* "2332" @1 (1)*')
    assert code == 0 and doc["results"][0]["output"] == '(0)* "3223" @1 (1)*'
    code, doc, _ = run_json(capsys, "act", "prox:3", "--omega", '"01" (0)*')
    assert doc["results"][0]["output"] == '"01111" (0)*'
    code, doc, _ = run_json(capsys, "act", "shift:3*hedlund^-1", "--omega", '"10002332111" (0)*')
    assert doc["results"][0]["output"] == '"10003223111" (0)*'


def test_minimality_collapse_freeness(capsys):
    code, doc, _ = run_json(capsys, "minimality", "--k", "3", "--source", "minimality_source.bar",
                            "--target", "minimality_target.bar")
    assert code == 0 and doc["results"][0]["agree"] == [True, True]
    code, doc, _ = run_json(capsys, "collapse", "--measure", "measure.json", "--budget", "6")
    assert code == 0
    code, doc, _ = run_json(capsys, "freeness", "--g", "shift:1", "--h", "hedlund", "--max-len", "2")
    assert code == 0 and doc["results"][0]["relations"] == ["hedlund hedlund", "hedlund⁻¹ hedlund⁻¹"]


def test_zd_commands(capsys):
    code, doc, _ = run_json(capsys, "zd", "norm", "--d", "2", "--k", "3", "--bound", "10")
    assert doc["results"][0]["value"] == 3 and doc["results"][0]["witness"] == [1, 3]
    code, doc, _ = run_json(capsys, "zd", "threshold", "--k", "3")
    assert code == 0 and doc["results"][0]["threshold"] == 1
    code, doc, _ = run_json(capsys, "zd", "phik", "cross_swap.json", "--k", "3")
    assert doc["results"][0]["minimal_radius"] == 3 and doc["results"][0]["shift"] is None
    code, doc, _ = run_json(capsys, "zd", "reduce", "shift:1,-2")
    assert doc["results"][0]["verdict"] == "shift" and doc["results"][0]["t"] == [1, -2]
    code, doc, _ = run_json(capsys, "zd", "reduce", "cross")
    assert doc["results"][0]["verdict"] == "not-a-shift"


def test_determinism(capsys):
    argv = ["report", "boundary", "--pairs", "2", "--k-max", "3", "--seed", "4"]
    _, _, first = run_json(capsys, *argv)
    _, _, second = run_json(capsys, *argv)
    assert first == second
    assert json.loads(first)["seed"] == 4


def test_timing_is_opt_in(capsys):
    _, doc, _ = run_json(capsys, "verify", "hedlund")
    assert doc["runtime_ms"] is None
    _, doc, _ = run_json(capsys, "verify", "hedlund", "--timing")
    assert isinstance(doc["runtime_ms"], float)


@pytest.mark.parametrize(
    "argv,reason",
    [
        (["verify", "missing.scheme"], "usage"),
        (["apply", "hedlund", "--config", '(0)* "2392" (1)*'], "symbol-out-of-alphabet"),
        (["act", "hedlund", "--omega", '"11" (1)*'], "invariant-violation"),
        (["proximality", "--k", "x", "--m", "1"], "usage"),
        (["zd", "reduce", "cross", "--alphabet", "2"], "usage"),
    ],
)
def test_usage_errors(capsys, argv, reason):
    assert main(argv) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == reason


def test_argparse_error_exit_code(capsys):
    assert main(["bogus"]) == 2
    assert main(["verify"]) == 2


def test_text_mode(capsys):
    assert main(["verify", "overlapping"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("verify: fail") and "witness: 00100" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "autshift", "verify", "hedlund"], capture_output=True, text=True)
    assert proc.returncode == 0 and "verify: pass" in proc.stdout
