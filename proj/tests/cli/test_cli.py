import hashlib
import json
import os
import subprocess
from pathlib import Path

import pytest

BIN = os.environ.get("EVFAM_BIN", str(Path(__file__).resolve().parents[2] / "build" / "evfam"))

TWO_HALFSPACES = {
    "dim": 2,
    "operators": [
        {"kind": "halfspace", "a": [-1.0, 0.0], "b": 0.0},
        {"kind": "halfspace", "a": [0.0, -1.0], "b": 0.0},
    ],
    "control": {"kind": "cyclic"},
    "relaxation": {"kind": "constant", "value": 1.0},
    "x0": [-1.0, -1.0],
    "stop": {"tol": 1e-6, "max_iter": 100, "stride": 1},
}

# Two half-spaces meeting at an acute angle: convergence is only asymptotic.
WEDGE = {
    "dim": 2,
    "operators": [
        {"kind": "halfspace", "a": [1.0, -0.2], "b": 0.0},
        {"kind": "halfspace", "a": [-1.0, -0.2], "b": 0.0},
        {"kind": "ball", "center": [0.0, 0.0], "radius": 10.0},
    ],
    "control": {"kind": "almost_cyclic", "pattern": [1, 2, 1, 3, 2]},
    "relaxation": {"kind": "constant", "value": 1.0},
    "x0": [3.0, -4.0],
    "stop": {"tol": 1e-7, "max_iter": 100000, "stride": 5},
}


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("EVFAM_SEED", None)
    full_env.update(env or {})
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=full_env)


def write_problem(tmp_path, problem, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(problem))
    return path


def digest(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def test_solve_converges(tmp_path):
    p = write_problem(tmp_path, TWO_HALFSPACES)
    r = run("solve", p, "-o", tmp_path / "out")
    assert r.returncode == 0, r.stderr
    summary = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert summary["final_point"] == [0.0, 0.0]
    assert summary["iterations"] == 2
    lines = (tmp_path / "out" / "trace.jsonl").read_text().splitlines()
    first = json.loads(lines[0])
    assert first == {"n": 0, "i": 1, "lambda": 1.0, "x": [-1.0, -1.0], "res": 1.0}
    assert json.loads(lines[-1])["status"] == "converged"


def test_solve_cap_and_errors(tmp_path):
    capped = dict(WEDGE, stop={"tol": 1e-12, "max_iter": 1, "stride": 1})
    assert run("solve", write_problem(tmp_path, capped), "-o", tmp_path / "cap").returncode == 2
    empty = dict(TWO_HALFSPACES, operators=[])
    r = run("solve", write_problem(tmp_path, empty, "empty.json"), "-o", tmp_path / "e")
    assert r.returncode == 1 and "operator" in r.stderr
    (tmp_path / "broken.json").write_text("{")
    assert run("solve", tmp_path / "broken.json").returncode == 1
    assert run("solve", tmp_path / "missing.json").returncode == 1
    assert run("bogus").returncode == 1


def test_analyze_outcomes(tmp_path):
    p = write_problem(tmp_path, WEDGE)
    assert run("solve", p, "-o", tmp_path).returncode == 0
    trace = tmp_path / "trace.jsonl"
    r = run("analyze", trace, p, "-o", tmp_path)
    assert r.returncode == 0, r.stdout + r.stderr
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["certification"]["status"] == "certified"
    assert report["replay"]["max_deviation"] <= 1e-12
    header = (tmp_path / "runs.csv").read_text().splitlines()[0]
    assert header == "n,i,lambda,res,dist_to_final"

    # A tolerance below what the run reached turns the final point into a violation.
    assert run("analyze", trace, p, "-o", tmp_path / "v", "--tol", "1e-14").returncode == 3

    # Ten iterates of a slow run: nothing settles, so nothing is certified.
    slow = dict(WEDGE, relaxation={"kind": "constant", "value": 0.1}, stop={"tol": 1e-9, "max_iter": 9, "stride": 1})
    ps = write_problem(tmp_path, slow, "slow.json")
    assert run("solve", ps, "-o", tmp_path / "slow").returncode == 2
    r = run("analyze", tmp_path / "slow" / "trace.jsonl", ps, "-o", tmp_path / "slow")
    assert r.returncode == 2 and "inconclusive" in r.stdout

    # Replaying against a different problem fails.
    other = json.loads(json.dumps(WEDGE))
    other["operators"][0]["b"] = 0.5
    r = run("analyze", trace, write_problem(tmp_path, other, "other.json"), "-o", tmp_path / "o")
    assert r.returncode == 1 and "replay" in r.stderr

    assert run("analyze", trace, p, "--eps", "0.1", "0.5").returncode == 1


def test_analyze_strict_and_window(tmp_path):
    relaxed = dict(TWO_HALFSPACES, relaxation={"kind": "sequence", "values": [0.5, 1.5]},
                   stop={"tol": 1e-9, "max_iter": 1000, "stride": 1})
    p = write_problem(tmp_path, relaxed)
    run("solve", p, "-o", tmp_path)
    run("analyze", tmp_path / "trace.jsonl", p, "-o", tmp_path / "s", "--strict")
    report = json.loads((tmp_path / "s" / "report.json").read_text())
    assert all(f["criterion"] == "strict-adjacent" for f in report["follows"])
    assert all(f["min_c"] == "none" for f in report["follows"])
    run("analyze", tmp_path / "trace.jsonl", p, "-o", tmp_path / "w", "--window", "7")
    assert json.loads((tmp_path / "w" / "report.json").read_text())["window"] == 7


def test_round_trip(tmp_path):
    p = write_problem(tmp_path, WEDGE)
    run("solve", p, "-o", tmp_path / "a")
    run("analyze", tmp_path / "a" / "trace.jsonl", p, "-o", tmp_path / "a")
    report = json.loads((tmp_path / "a" / "report.json").read_text())
    assert report["replay"]["ok"] and report["replay"]["max_deviation"] == 0.0


def test_determinism(tmp_path):
    p = write_problem(tmp_path, WEDGE)
    for d in ("x", "y"):
        run("solve", p, "-o", tmp_path / d)
        run("analyze", tmp_path / d / "trace.jsonl", p, "-o", tmp_path / d)
    for f in ("trace.jsonl", "summary.json", "report.json", "runs.csv"):
        assert digest(tmp_path / "x" / f) == digest(tmp_path / "y" / f)
    a = run("check", "intseq", "--seed", "5", "--budget", "50")
    b = run("check", "intseq", "--budget", "50", env={"EVFAM_SEED": "5"})
    assert a.returncode == 0 and a.stdout == b.stdout


@pytest.mark.parametrize("suite", ["intseq", "families", "multisets", "setlimits", "cfp", "analysis"])
def test_check_suites(suite):
    r = run("check", suite, "--seed", "3", "--budget", "100")
    assert r.returncode == 0, r.stdout
    assert r.stdout.startswith("PASS")


def test_check_budget_zero_and_errors():
    r = run("check", "all", "--budget", "0")
    assert r.returncode == 0 and "0 cases" in r.stdout
    assert run("check", "nonsense").returncode == 1
    assert run("check", "intseq", env={"EVFAM_SEED": "abc"}).returncode == 1


def test_demos(tmp_path):
    r = run("demo", "counterexample", "-o", tmp_path / "c")
    assert r.returncode == 0 and "no classical limit" in r.stdout
    report = json.loads((tmp_path / "c" / "report.json").read_text())
    assert [c["point"] for c in report["candidates"]] == [[-1.0]]
    assert all(row["run"] == 1 for row in report["candidates"][0]["per_eps"])

    r = run("demo", "two-halfspaces", "-o", tmp_path / "t")
    assert r.returncode == 0 and "x2 = (0, 0)" in r.stdout
    assert json.loads((tmp_path / "t" / "report.json").read_text())["certification"]["status"] == "certified"

    r = run("demo", "families-tour", "-o", tmp_path / "f")
    assert r.returncode == 0 and "not a filter" in r.stdout
    assert (tmp_path / "f" / "families.json").exists()
