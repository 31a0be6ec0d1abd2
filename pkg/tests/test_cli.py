import io
import json
import subprocess
import sys

import pytest

from mermin_ks import cli

SUBCOMMANDS = [
    ["pentagram"],
    ["rays", "--table-check"],
    ["relations", "--enumerate-octads"],
    ["search", "--system", "rank1"],
    ["search", "--system", "rank2", "--max-sat"],
    ["pairings", "--paper"],
    ["pairings", "--enumerate"],
    ["hypergraph", "--format", "json"],
]


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv", SUBCOMMANDS, ids=lambda a: " ".join(a))
def test_json_report(argv):
    code, out, err = run(argv + ["--json"])
    assert code == 0, out
    rep = json.loads(out)
    assert rep["schema_version"] == cli.SCHEMA_VERSION
    assert rep["command"] == argv[0]
    assert rep["ok"] is True
    assert rep["inputs_digest"].startswith("sha256:")
    assert rep["checks"] and all(set(c) == {"name", "passed", "details"} for c in rep["checks"])
    assert err == ""


@pytest.mark.parametrize("argv", SUBCOMMANDS, ids=lambda a: " ".join(a))
def test_deterministic(argv):
    assert run(argv) == run(argv)
    assert run(["--json"] + argv) == run(argv + ["--json"])


def test_search_rank2_unsat():
    code, out, _ = run(["search", "--system", "rank2"])
    assert code == 0
    assert "UNSAT" in out


def test_pairings_count():
    code, out, _ = run(["pairings", "--enumerate", "--json"])
    assert code == 0
    assert json.loads(out)["outputs"]["count"] == 243


def test_missing_file():
    code, out, err = run(["search", "--system", "missing.json"])
    assert code == 2
    assert out == ""
    assert "not found" in err and "missing.json" in err


def test_unreadable_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    code, out, err = run(["search", "--system", str(p)])
    assert code == 2 and out == "" and "cannot read" in err


def test_user_system(tmp_path):
    p = tmp_path / "tri.json"
    p.write_text(json.dumps({"contexts": [["a", "b"], ["b", "c"], ["c", "a"]]}))
    code, out, _ = run(["search", "--system", str(p), "--max-sat", "--json"])
    rep = json.loads(out)
    assert code == 0
    assert rep["outputs"]["result"] == "UNSAT"
    assert rep["outputs"]["max_satisfiable_contexts"] == 2
    # digest covers file contents
    p.write_text(json.dumps({"contexts": [["a", "b"], ["b", "c"]]}))
    rep2 = json.loads(run(["search", "--system", str(p), "--json"])[1])
    assert rep2["inputs_digest"] != rep["inputs_digest"]
    assert rep2["outputs"]["result"] == "SAT"


@pytest.mark.parametrize("argv", [["bogus"], ["pentagram", "--nope"], [], ["search"], ["pairings"]])
def test_usage_errors(argv, capsys):
    code, out, err = run(argv)
    captured = capsys.readouterr()
    assert code == 2
    assert out == "" and captured.out == ""
    assert "usage" in captured.err or "error" in err


def test_failed_check_exits_one(monkeypatch):
    monkeypatch.setattr(cli, "count_sign_assignments", lambda p: 1)
    code, out, _ = run(["pentagram"])
    assert code == 1
    assert "FAIL" in out


def test_hypergraph_out(tmp_path):
    target = tmp_path / "g.dot"
    code, out, _ = run(["hypergraph", "--format", "dot", "--out", str(target)])
    assert code == 0
    assert target.read_text().startswith("graph planes {")
    assert "graph planes" not in out


def test_hypergraph_stdout_is_primary():
    code, out, err = run(["hypergraph", "--format", "dot"])
    assert code == 0
    assert out.startswith("graph planes {")
    assert "hypergraph: PASS" in err


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "mermin_ks", "pentagram", "--json"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["ok"]
