import io
import math
import subprocess
import sys

import numpy as np
import pytest

from thompson_schatten.cli import main
from thompson_schatten.metrics import schatten_norm
from thompson_schatten.textio import read_matrix, write_matrix

from conftest import E2, E3, random_sym


def run(argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, m in {
        "e2x": E2[0], "e2y": E2[1], "e3x": E3[0], "e3y": E3[1],
        "indef": np.array([[1.0, 2.0], [2.0, 1.0]]), "i3": np.eye(3),
        "q1": [[1.0]], "a1": [[0.5]], "q2": np.diag([2.0, 3.0]), "z2": np.zeros((2, 2)),
    }.items():
        paths[name] = tmp_path / f"{name}.txt"
        write_matrix(paths[name], m)
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 2\n")
    paths["bad"] = bad
    return paths


class TestDist:
    def test_identical(self, files):
        assert run(["dist", files["e2x"], files["e2x"]]) == (0, "0\n")

    def test_e2(self, files):
        assert run(["dist", files["e2x"], files["e2y"]]) == (0, "0.693147180560\n")

    def test_not_pd(self, files, capsys):
        code, _ = run(["dist", files["e2x"], files["indef"]])
        assert code == 3
        assert "-1" in capsys.readouterr().err

    def test_parse_error(self, files):
        assert run(["dist", files["bad"], files["e2x"]])[0] == 2

    def test_dimension(self, files):
        assert run(["dist", files["e2x"], files["i3"]])[0] == 4

    def test_missing_file(self, files, tmp_path):
        assert run(["dist", files["e2x"], tmp_path / "nope.txt"])[0] == 2


class TestNorm:
    @pytest.mark.parametrize("p", ["1", "2", "inf"])
    def test_matches_library(self, tmp_path, rng, p):
        a = random_sym(rng, 5)
        write_matrix(tmp_path / "a.txt", a)
        code, out = run(["norm", tmp_path / "a.txt", "--p", p])
        assert code == 0
        assert float(out) == pytest.approx(schatten_norm(a, p), abs=1e-12)

    def test_bad_order(self, files):
        assert run(["norm", files["e2x"], "--p", "0.5"])[0] == 2
        assert run(["norm", files["e2x"], "--p", "Infinity"])[0] == 2


class TestBound:
    def test_e2(self, files, tmp_path):
        code, out = run(["bound", files["e2x"], files["e2y"], "--p", "2", "--csv", tmp_path / "b.csv"])
        assert code == 0
        assert "actual      1.414213562373" in out
        assert "frob        1.414213562373" in out
        assert "ratio_frob  1.000000000000" in out
        assert len((tmp_path / "b.csv").read_text().splitlines()) == 2

    def test_e3_flags_but_exits_zero(self, files):
        code, out = run(["bound", files["e3x"], files["e3y"], "--p", "inf"])
        assert code == 0
        assert "t3          0.909090909091" in out
        assert "ratio_t3    1.000000000000" in out
        assert "t2 FLAG" in out and "t3 PASS" in out

    def test_identical(self, files):
        code, out = run(["bound", files["e2x"], files["e2x"], "--p", "1,2,inf"])
        assert code == 0
        assert "FLAG" not in out
        assert out.count("actual      0\n") == 3

    def test_empty_order_list(self, files):
        assert run(["bound", files["e2x"], files["e2y"], "--p", ","])[0] == 2


def test_audit(files, tmp_path):
    code, out = run(["audit", files["e3x"], files["e3y"], "--csv", tmp_path / "a.csv"])
    assert code == 0
    first = out.splitlines()[1]
    assert "0.826446280992 FLAG" in first
    assert len((tmp_path / "a.csv").read_text().splitlines()) == 6


class TestSweepCommand:
    def write(self, tmp_path, body):
        path = tmp_path / "sweep.cfg"
        path.write_text(body)
        return path

    def test_tight_diag(self, tmp_path):
        cfg = self.write(tmp_path, f"trials = 40\nfamilies = tight_diag\nn_list = 2\np_list = 2\nd_grid = 0.3\noutput = {tmp_path / 'o.csv'}\n")
        code, out = run(["sweep", cfg])
        assert code == 0
        assert "ratio_frob: min 1.000000000 max 1.000000000" in out

    def test_empty_p_list(self, tmp_path):
        assert run(["sweep", self.write(tmp_path, "trials = 3\np_list =\n")])[0] == 2

    def test_unknown_key(self, tmp_path):
        assert run(["sweep", self.write(tmp_path, "trials = 3\ncolour = blue\n")])[0] == 2

    def test_repeatable(self, tmp_path):
        cfg = self.write(tmp_path, "trials = 10\nn_list = 3\np_list = 1,inf\n")
        a = [ln for ln in run(["sweep", cfg])[1].splitlines() if not ln.startswith("#")]
        b = [ln for ln in run(["sweep", cfg])[1].splitlines() if not ln.startswith("#")]
        assert a == b and len(a) == 21


class TestSolveCommand:
    def test_zero_coefficient(self, files, tmp_path):
        out_path = tmp_path / "x.txt"
        code, out = run(["solve", files["q2"], files["z2"], "--tol-d", "1e-8", "--out", out_path])
        assert code == 0
        assert out_path.read_text() == files["q2"].read_text()
        assert "heuristic" in out

    def test_scalar(self, files, tmp_path):
        out_path = tmp_path / "x.txt"
        code, out = run(["solve", files["q1"], files["a1"], "--tol-d", "1e-12", "--p", "1,2,inf", "--out", out_path,
                         "--csv", tmp_path / "c.csv"])
        assert code == 0
        x = read_matrix(out_path)[0, 0]
        assert abs(x - (1 + math.sqrt(2)) / 2) <= 1e-12
        assert (tmp_path / "c.csv").read_text().splitlines()[0] == "p,bound"

    def test_zero_tolerance(self, files):
        assert run(["solve", files["q1"], files["a1"], "--tol-d", "0"])[0] == 2

    def test_max_iterations(self, files):
        assert run(["solve", files["q1"], files["a1"], "--tol-d", "1e-14", "--max-iter", "3"])[0] == 5

    def test_not_pd(self, files):
        assert run(["solve", files["indef"], files["z2"], "--tol-d", "1e-8"])[0] == 3


def test_round_trip_ulp(tmp_path, rng):
    for _ in range(20):
        a = random_sym(rng, 4) * 10.0 ** rng.uniform(-8, 8)
        write_matrix(tmp_path / "m.txt", a)
        np.testing.assert_array_equal(read_matrix(tmp_path / "m.txt"), a)


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "thompson_schatten", "dist", str(files["e2x"]), str(files["e2y"])],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "0.693147180560\n"
    proc = subprocess.run([sys.executable, "-m", "thompson_schatten", "dist", str(files["e2x"]), str(files["indef"])],
                          capture_output=True, text=True)
    assert proc.returncode == 3 and proc.stdout == "" and "not positive definite" in proc.stderr
