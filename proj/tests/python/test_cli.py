import json
import os
import subprocess

import pytest

CLI = os.environ.get("PADLD_CLI", "padld")

GERM = "p 5\ndim 2\ntrunc 6\nphi1 = 5*x1 + x2^2\nphi2 = x2\n"
SERIES = "dim 1\ntrunc 2\ng1 = 3*x1 + x1^2\n"


def run(*args, **kw):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kw)


@pytest.fixture
def germ_file(tmp_path):
    f = tmp_path / "germ.txt"
    f.write_text(GERM)
    return str(f)


@pytest.fixture
def series_file(tmp_path):
    f = tmp_path / "series.txt"
    f.write_text(SERIES)
    return str(f)


def test_separate_report(germ_file):
    r = run("separate", germ_file, "--split", "1")
    assert r.returncode == 0, r.stderr
    rep = json.loads(r.stdout)
    assert rep["version"] == "1"
    assert rep["results"]["f"] == ["-1/4*x2^2"]
    assert rep["results"]["radius_threshold"] == "0"


def test_newton_count(series_file):
    r = run("newton", series_file, "--p", "3", "--m", "1")
    assert r.returncode == 0, r.stderr
    rep = json.loads(r.stdout)
    assert rep["results"]["count"] == 1


def test_oracle(tmp_path):
    f = tmp_path / "lin.txt"
    f.write_text("p 3\ndim 1\ntrunc 3\nphi1 = 4*x1\n")
    r = run("oracle", str(f), "--period", "1", "--modulus-exp", "4", "--min-val", "1")
    assert r.returncode == 0, r.stderr
    rep = json.loads(r.stdout)
    assert rep["results"]["candidates"] == [["0"], ["27"], ["54"]]


def test_determinism_excluding_timing(germ_file):
    outs = []
    for _ in range(2):
        r = run("separate", germ_file, "--split", "1")
        rep = json.loads(r.stdout)
        rep.pop("timing_seconds", None)
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1]


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("p 3\ndim 2\ntrunc 2\nphi1 = x1\n")  # phi2 missing: parse error
    assert run("separate", str(bad), "--split", "1").returncode == 3

    nonprime = tmp_path / "nonprime.txt"
    nonprime.write_text("p 4\ndim 1\ntrunc 2\nphi1 = x1\n")  # precondition refusal
    assert run("separate", str(nonprime), "--split", "1").returncode == 2

    # precondition refusal: non-indifferent multiplier for check-isolation
    att = tmp_path / "att.txt"
    att.write_text("p 3\ndim 1\ntrunc 2\nphi1 = 3*x1\n")
    r = run("check-isolation", str(att))
    assert r.returncode == 2
    assert "separate" in (r.stdout + r.stderr)

    # degenerate identity iterate is a refusal too
    ident = tmp_path / "id.txt"
    ident.write_text("p 3\ndim 1\ntrunc 2\nphi1 = x1\n")
    assert run("check-isolation", str(ident)).returncode == 2


def test_check_isolation(tmp_path):
    f = tmp_path / "lin2.txt"
    f.write_text("p 3\ndim 2\ntrunc 2\nphi1 = 4*x1\nphi2 = 4*x2\n")
    r = run("check-isolation", str(f))
    assert r.returncode == 0, r.stderr
    rep = json.loads(r.stdout)
    assert rep["results"]["oracle_checked"] is True
    assert rep["results"]["m_star"] >= 1
    assert rep["results"]["certified"] is True
