import csv
import io
import json
import subprocess
import sys

import pytest

from heegex.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_kummer_fast_trivial():
    code, out = run("check", "--lattice", "U*2+A1(-1)+A1(-3)", "--m", "1/4", "--mu", "1,0")
    assert code == 0
    assert "FastTrivial" in out and "1/8" in out


def test_unimodular_full_degree():
    code, out = run("check", "--lattice", "U*2+E8(-1)*4", "--m", "1", "--mu", "", "--criterion", "full")
    assert code == 0 and "FullDegree" in out


def test_inconclusive_exit():
    code, out = run("check", "--lattice", "U*2+E8(-1)*4", "--m", "2", "--mu", "")
    assert code == 1 and "Inconclusive" in out


def test_empty_exit():
    code, out = run("check", "--lattice", "A1(3)*2+A1(-3)*4", "--m", "1", "--mu", "0,0,0,0,0,0")
    assert code == 2 and "EmptyDivisor" in out


@pytest.mark.parametrize("argv", [
    ["check", "--lattice", "U"],
    ["check", "--lattice", "U", "--m", "1", "--mu", ""],
    ["check", "--lattice", "U*2+", "--m", "1"],
    ["check", "--lattice", "U*2+E8(-1)", "--m", "1/3", "--mu", ""],
    ["check", "--lattice", "U*2+A1(-1)*3", "--m", "1/4", "--mu", "1"],
    ["check", "--d", "1", "--h", "2", "--a", "1"],
    ["check", "--d", "1"],
    ["bogus"],
    ["k3-table", "--d", "25"],
    ["k3-table", "--jobs", "0"],
    ["scan", "--mode", "k3", "--m", "1/4"],
    ["unimodular-table", "--r", "3"],
])
def test_usage_errors_exit_3(argv, capsys):
    code, _ = run(*argv)
    assert code == 3
    assert "error" in capsys.readouterr().err


def test_k3_mode_and_json():
    code, out = run("check", "--d", "2", "--h", "1", "--a", "1", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["verdict"] == "ExtremalCertified" and rec["criterion"] == "FastTrivial"
    assert rec["m"] == "1/8" and rec["lhs"] == "1/16"


def test_csv_format():
    code, out = run("check", "--d", "1", "--h", "1", "--a", "1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 and rows[0]["verdict"] == "ExtremalCertified"


def test_siegel_criterion():
    code, out = run("check", "--d", "1", "--h", "1", "--a", "1", "--criterion", "siegel", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "agreement" and rep["volume"]["sign"] == "-1"


def test_k3_table_jobs_deterministic():
    a = run("k3-table", "--d", "1-4", "--format", "csv")
    b = run("k3-table", "--d", "1-4", "--format", "csv", "--jobs", "3")
    assert a == b and a[0] == 0
    rows = list(csv.DictReader(io.StringIO(a[1])))
    assert [(r["d"], r["m"], r["a"]) for r in rows][:3] == [("1", "1/4", "1"), ("2", "1/8", "1"), ("2", "1/2", "2")]


def test_unimodular_table_extra():
    code, out = run("unimodular-table", "--r", "4", "--extra", "1", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert [(r["m"], r["listed"], r["verdict"]) for r in rows] == [
        ("1", "yes", "ExtremalCertified"), ("2", "no", "Inconclusive")]


def test_scan():
    code, out = run("scan", "--mode", "k3", "--m", "1/4", "--dmu", "2", "--dmax", "100")
    assert code == 0 and "threshold: 1" in out
    code, out = run("scan", "--mode", "rank", "--m", "1", "--rmax", "24", "--format", "csv")
    assert code == 0 and out.startswith("param,")


def test_eisenstein_rows():
    code, out = run("eisenstein", "--lattice", "U*2+E8(-1)", "--tmax", "3")
    assert code == 0
    assert out.splitlines() == ["gamma,t,c", '"",0,1', '"",1,-504', '"",2,-16632', '"",3,-122976']


def test_cache_commands(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    code, out = run("cache", "verify", "--cache", path)
    assert code == 0 and out.startswith("0 records") and "OK" in out
    assert run("eisenstein", "--lattice", "U*2+A1(-1)", "--tmax", "2", "--cache", path)[0] == 0
    code, out = run("cache", "list", "--cache", path)
    assert code == 0 and len(out.splitlines()) == 1 + 5
    assert run("cache", "verify", "--cache", path)[1].startswith("5 records")
    with open(path, "a") as fh:
        fh.write('{"lat":"x","2k":5,"gamma":[0],"t":"1","c":"2"}\n')
    code, out = run("cache", "verify", "--cache", path)
    assert code == 4 and "PROBLEMS" in out
    code, out = run("cache", "clear", "--cache", path)
    assert code == 0 and "cleared 6" in out


def test_no_cache_flag(tmp_path, monkeypatch):
    path = tmp_path / "c.jsonl"
    monkeypatch.setenv("HEEGEX_CACHE", str(path))
    assert run("check", "--lattice", "U*2+E8(-1)*4", "--m", "1", "--mu", "", "--criterion", "full",
               "--no-cache")[0] == 0
    assert not path.exists()


def test_discgroup():
    code, out = run("discgroup", "--lattice", "U*2+A1(-1)+A1(-3)")
    assert code == 0
    assert "Z/2 x Z/6" in out and "(order 12)" in out
    assert len([ln for ln in out.splitlines() if ln.strip().startswith(("0,", "1,"))]) == 12


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "heegex", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("heegex ")
    res = subprocess.run([sys.executable, "-m", "heegex", "check", "--lattice", "U"], capture_output=True, text=True)
    assert res.returncode == 3
