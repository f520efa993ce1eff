import json
import subprocess
import sys

import pytest

from redmax.cli import run
from redmax.gwd import K2_SIX_WIRE


def out_json(capsys, argv, code=0):
    assert run(argv) == code
    return json.loads(capsys.readouterr().out)


def test_mkn_text(capsys):
    assert run(["mkn", "--k", "2", "--n", "8"]) == 0
    assert capsys.readouterr().out.startswith("M(2,8) = 9")


def test_mkn_json(capsys):
    d = out_json(capsys, ["mkn", "--k", "2", "--n", "8", "--json"])
    assert d["command"] == "mkn"
    v = d["values"]
    assert (v["k"], v["n"], v["value"], v["method"]) == (2, 8, 9, "path-dfs")
    assert len(v["witness"]["sets"]) == 10


def test_mkn_dp_csv(capsys):
    assert run(["mkn", "--k", "2", "--n", "5", "--method", "weak-order-dp", "--mode", "min", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["k,n,value,method,mode", "2,5,2,weak-order-dp,min"]


def test_mkn_python_backend(capsys):
    assert run(["mkn", "--k", "3", "--n", "7", "--backend", "python", "--exhaustive"]) == 0
    assert "M(3,7) = 8" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert run(["mkn", "--k", "0", "--n", "5"]) == 2
    assert run(["mkn", "--k", "2"]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["mkn", "--k", "2", "--n", "5", "--bogus"]) == 2
    assert run(["mkn", "--k", "2", "--n", "5", "--caps", "dp_max_n=lots"]) == 2
    assert run(["mkn", "--k", "2", "--n", "5", "--caps", "nonsense=1"]) == 2


def test_resource_cap(capsys):
    assert run(["mkn", "--k", "2", "--n", "10", "--method", "weak-order-dp"]) == 3
    assert run(["mkn", "--k", "2", "--n", "9", "--caps", "dfs_max_n=8"]) == 3
    assert "resource cap" in capsys.readouterr().err


def test_caps_env(monkeypatch, capsys):
    monkeypatch.setenv("REDMAX_CAPS", "dfs_max_n=6")
    assert run(["mkn", "--k", "2", "--n", "7"]) == 3
    monkeypatch.setenv("REDMAX_CAPS", '{"dfs_max_n": 7}')
    assert run(["mkn", "--k", "2", "--n", "7"]) == 0


def test_ck(capsys, tmp_path):
    f = tmp_path / "pat.json"
    assert run(["ck", "--k", "2", "--emit-pattern", str(f)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "3/2"
    pat = json.loads(f.read_text())
    assert pat["d"] == 2 and len(pat["sets"]) == 4
    assert run(["pattern", "check", "--file", str(f)]) == 0
    assert capsys.readouterr().out.startswith("repeatable")


def test_ck_json_deterministic(capsys):
    a = out_json(capsys, ["ck", "--k", "3", "--json"])
    b = out_json(capsys, ["ck", "--k", "3", "--json"])
    assert a["values"] == b["values"]
    assert a["values"]["value"] == "11/6"


def test_ck_best_effort(capsys):
    assert run(["ck", "--k", "3", "--caps", "tk_max_nodes=10"]) == 3
    capsys.readouterr()
    d = out_json(capsys, ["ck", "--k", "3", "--best-effort", "--caps", "tk_max_nodes=10", "--json"])
    assert d["values"]["exact"] is False


def test_pattern_check_rejects(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"k": 2, "d": 1, "sets": [[1, 2], [1, 3], [2, 3]]}))
    assert run(["pattern", "check", "--file", str(f)]) == 1
    f.write_text("{not json")
    assert run(["pattern", "check", "--file", str(f)]) == 2
    assert run(["pattern", "check", "--file", str(tmp_path / "missing.json")]) == 2


def test_pattern_witness(capsys):
    d = out_json(capsys, ["pattern", "witness", "--k", "3", "--n", "9", "--json"])
    assert d["values"]["steps"] == 12
    assert len(d["witness"]["sets"]) == 13


def test_pattern_search(capsys):
    assert run(["pattern", "search", "--k", "2", "--span", "6"]) == 0
    assert "max density 3/2" in capsys.readouterr().out


def test_arc_commands(tmp_path, capsys):
    rec = tmp_path / "mkn.json"
    assert run(["mkn", "--k", "3", "--n", "9", "--json", "-o", str(rec)]) == 0
    svg = tmp_path / "d.svg"
    assert run(["arc", "svg", "--path", str(rec), "-o", str(svg)]) == 0
    assert svg.read_text().count('class="arc black"') == 12
    d = out_json(capsys, ["arc", "decompose", "--path", str(rec), "--json"])
    assert d["values"]["covered_bound"] is True
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"k": 3, "n": 6, "sets": [[1, 2, 3], [1, 2, 4], [1, 4, 5], [1, 4, 6], [4, 5, 6]]}))
    assert run(["arc", "svg", "--path", str(p), "--bicolored"]) == 0
    assert capsys.readouterr().out.count('class="arc red"') == 4


def test_arc_decompose_k2_rejected(tmp_path, capsys):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"sets": [[1, 2], [1, 3]]}))
    assert run(["arc", "decompose", "--path", str(p)]) == 2


def test_gwd_commands(tmp_path, capsys):
    f = tmp_path / "d.json"
    f.write_text(json.dumps(K2_SIX_WIRE.to_json(2)))
    d = out_json(capsys, ["gwd", "simplify", "--in", str(f), "--json"])
    kinds = [(e["kind"], e["level"]) for e in d["events"]]
    assert kinds == [("cross", 2), ("cross", 1), ("fall", 2), ("fall", 2)] * 2
    g = tmp_path / "s.json"
    g.write_text(json.dumps(d))
    assert run(["gwd", "path", "--in", str(g)]) == 0
    assert capsys.readouterr().out.strip().startswith("12-13-23-34-35-45")


def test_gwd_random_seeded(capsys):
    assert run(["gwd", "random", "--k", "2", "--seed", "5"]) == 0
    a = capsys.readouterr().out
    assert run(["gwd", "random", "--k", "2", "--seed", "5"]) == 0
    assert capsys.readouterr().out == a


def test_gwd_non_reduced(tmp_path, capsys):
    f = tmp_path / "d.json"
    f.write_text(json.dumps({"k": 1, "events": [{"t": 0, "kind": "cross", "level": 1},
                                                {"t": 1, "kind": "cross", "level": 1}]}))
    assert run(["gwd", "simplify", "--in", str(f)]) == 2


def test_coxeter_min(capsys):
    assert run(["coxeter", "min", "--type", "E8"]) == 0
    out = capsys.readouterr().out
    assert "chain 5,10,15,12,9,6,3" in out and "branch 8" in out
    d = out_json(capsys, ["coxeter", "min", "--type", "B", "--rank", "5", "--oracle", "--json"])
    assert d["values"] == {"1": 5, "2": 5, "3": 4, "4": 3, "5": 2}


def test_coxeter_min_csv(capsys):
    assert run(["coxeter", "min", "--type", "F4", "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines()[1:] == ["F4,4,1,3", "F4,4,2,6", "F4,4,3,6", "F4,4,4,3"]


def test_coxeter_cartan(capsys):
    d = out_json(capsys, ["coxeter", "cartan", "--type", "F4", "--json"])
    assert d["values"]["explicit_matrix"]["nonnegative"] is True
    d = out_json(capsys, ["coxeter", "cartan", "--type", "H4", "--v", "5,10,15,15", "--json"])
    assert "feasible" in d["values"]
    assert run(["coxeter", "cartan", "--type", "G2"]) == 0


def test_coxeter_oracle_cap(capsys):
    assert run(["coxeter", "min", "--type", "D", "--rank", "7", "--oracle"]) == 3


def test_reproduce_subset(capsys):
    d = out_json(capsys, ["reproduce", "--only", "1,6,9", "--json"])
    assert d["passed"] is True
    assert [r["criterion"] for r in d["criteria"]] == [1, 6, 9]
    assert all("seconds" not in r for r in d["criteria"])


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "redmax", "mkn", "--k", "1", "--n", "4"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "M(1,4) = 3" in p.stdout


def test_version(capsys):
    with pytest.raises(SystemExit):
        from redmax.cli import build_parser
        build_parser().parse_args(["--version"])
