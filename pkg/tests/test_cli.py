import subprocess
import sys

import pytest

from octrav.cli import main
from octrav.formats import to_edge_list

from conftest import NAMED, complete


def run(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "octrav.cli", *args], input=stdin,
                          capture_output=True, text=True, timeout=120)


@pytest.fixture
def petersen(tmp_path):
    p = tmp_path / "petersen.txt"
    p.write_text(to_edge_list(NAMED["Petersen"]))
    return p


@pytest.mark.parametrize("algo", ["greedy", "anneal", "genetic", "sat"])
def test_solve_then_verify(petersen, algo):
    solved = run("solve", str(petersen), "--algo", algo, "--iters", "300", "--gens", "20", "--pop", "6")
    assert solved.returncode == 0, solved.stderr
    assert solved.stdout.startswith(f"# algorithm={algo}")
    checked = run("verify", str(petersen), "-", stdin=solved.stdout)
    assert checked.returncode == 0, checked.stdout
    assert "certificate  ok" in checked.stdout


def test_verify_rejects_bad_solution(petersen, tmp_path):
    sol = tmp_path / "bad.txt"
    sol.write_text("A: 0 1 2 3 4 5 6 7 8 9\nB:\nD:\n")
    out = run("verify", str(petersen), str(sol))
    assert out.returncode == 1 and "valid        FAIL" in out.stdout


def test_verify_strict_minimal(tmp_path):
    g = tmp_path / "k3.txt"
    g.write_text("a b\nb c\na c\n")
    sol = tmp_path / "s.txt"
    sol.write_text("A: a\nB: b\nD: c\n")
    assert main(["verify", str(g), str(sol), "--strict-minimal"]) == 0


def test_encode_header(tmp_path, capsys):
    g = tmp_path / "k5.txt"
    g.write_text(to_edge_list(complete(5)))
    assert main(["encode", str(g), "--k", "3"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "p cnf 27 50"


def test_gen_dimacs(capsys):
    assert main(["gen", "--n", "20", "--m", "40", "--seed", "3", "--format", "dimacs"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "p edge 20 40" and len(lines) == 41


def test_bench(tmp_path, petersen, capsys):
    out = tmp_path / "runs.csv"
    code = main(["bench", str(petersen), "--algo", "greedy", "--algo", "sat",
                 "--seeds", "0", "1", "--out", str(out)])
    assert code == 0
    assert len(out.read_text().splitlines()) == 5
    assert "algorithm" in capsys.readouterr().out


def test_usage_errors():
    assert run("solve", "--algo", "anneal").returncode == 2
    assert run("solve", "x.txt", "--algo", "bogus").returncode == 2
    assert run().returncode == 2
    assert run("bench").returncode == 2


def test_missing_file():
    out = run("solve", "/nonexistent/graph.txt")
    assert out.returncode == 1 and "octrav:" in out.stderr


def test_parse_error_reported(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 3\n")
    out = run("solve", str(bad))
    assert out.returncode == 1 and "line 1" in out.stderr
