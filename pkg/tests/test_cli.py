import json
from pathlib import Path

import pytest

import matrigid
from matrigid.cli import main

DATA = Path(matrigid.__file__).parent / "data"


@pytest.fixture(autouse=True)
def _no_env(monkeypatch):
    monkeypatch.delenv("MATRIGID_TOL", raising=False)


@pytest.mark.parametrize("name,code", [("k6e_cyl", 0), ("k6e_trace", 0), ("k7_hcyl", 0), ("cone_edge", 2)])
def test_analyze_exit_codes(name, code, capsys):
    assert main(["analyze", str(DATA / f"{name}.json")]) == code
    doc = json.loads(capsys.readouterr().out)
    if code == 2:
        assert doc["verdict"] == "NotWellPositioned" and doc["offending_edges"] == [[1, 2]]
    else:
        assert doc["verdict"] == "MinimallyRigid"


def test_analyze_flexible_and_text(tmp_path, capsys):
    doc = json.loads((DATA / "k6e_trace.json").read_text())
    doc["edges"] = doc["edges"][:-1]
    p = tmp_path / "flex.json"
    p.write_text(json.dumps(doc))
    assert main(["analyze", str(p), "--text"]) == 1
    out = capsys.readouterr().out
    assert "verdict: Flexible" in out and "tolerances:" in out


def test_analyze_input_errors(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "missing.json")]) == 3
    p = tmp_path / "bad.json"
    p.write_text('{"space": 1}')
    assert main(["analyze", str(p)]) == 3
    assert "line 1" in capsys.readouterr().err
    assert main(["analyze"]) == 3
    assert main(["frobnicate"]) == 3


def test_tolerance_precedence(tmp_path, monkeypatch, capsys):
    doc = json.loads((DATA / "k6e_trace.json").read_text())
    doc["tolerances"] = {"rank_rel_tol": 1e-6, "gap_tol": 1e-5}
    p = tmp_path / "t.json"
    p.write_text(json.dumps(doc))

    def used(*extra):
        main(["analyze", str(p), *extra])
        return json.loads(capsys.readouterr().out)["tolerances"]

    t = used()
    assert t["rank_rel_tol"] == 1e-6 and t["gap_tol"] == 1e-5
    monkeypatch.setenv("MATRIGID_TOL", "1e-7")
    t = used()
    assert t["rank_rel_tol"] == 1e-7 and t["gap_tol"] == 1e-5
    t = used("--tol", "1e-8", "--gap-tol", "1e-4")
    assert t["rank_rel_tol"] == 1e-8 and t["gap_tol"] == 1e-4
    monkeypatch.setenv("MATRIGID_TOL", "abc")
    assert main(["analyze", str(p)]) == 3


def test_sparsity_command(tmp_path, capsys):
    k4 = tmp_path / "k4.txt"
    k4.write_text("\n".join(f"{u} {v}" for u in range(1, 5) for v in range(u + 1, 5)))
    assert main(["sparsity", str(k4), "--k", "2", "--l", "3"]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["sparse"] is False and out["witness"]["edges"]
    path = tmp_path / "path.txt"
    path.write_text("1 2\n2 3\n3 4\n")
    assert main(["sparsity", str(path), "--k", "1", "--l", "1"]) == 0
    assert main(["sparsity", str(path), "--k", "2", "--l", "3"]) == 1
    assert main(["sparsity", str(path), "--k", "2", "--l", "9"]) == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n1 2 3\n")
    assert main(["sparsity", str(bad), "--k", "1", "--l", "1"]) == 3
    assert "line 2" in capsys.readouterr().err


def test_construct_round_trip(tmp_path, capsys):
    out = tmp_path / "k6.json"
    assert main(["construct", "k6e", "--epsilon", "0.1", "--delta", "0.4", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["meta"]["params"] == {"eps": 0.1, "delta": 0.4}
    assert doc["certificate"]["verdict"] == "MinimallyRigid"
    assert main(["analyze", str(out)]) == 0
    capsys.readouterr()
    assert main(["construct", "km", "--m", "5"]) == 3
    assert main(["construct", "km"]) == 3
    assert main(["construct", "k6e", "--epsilon", "0.7"]) == 3
    assert main(["construct", "km", "--m", "7", "--space", "cyl"]) == 0
    assert len(json.loads(capsys.readouterr().out)["vertices"]) == 7


def test_colour_command(capsys):
    assert main(["colour", str(DATA / "k6e_cyl.json")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("E_1 (9):") and "E_2 (5):" in out
    assert main(["colour", str(DATA / "cone_edge.json")]) == 2
    assert "degenerate: 1-2" in capsys.readouterr().out
    assert main(["colour", str(DATA / "k6e_trace.json")]) == 3


def test_version(capsys):
    assert main(["--version"]) == 0
    assert matrigid.__version__ in capsys.readouterr().out
