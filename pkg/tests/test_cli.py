"""Command-line interface: subcommands, file formats, and exit codes.

Exit code contract: 0 ok, 1 self-test failure, 2 bad method/dimension,
3 infeasible simplex, 4 degeneracy, 5 I/O error.
"""

import json

import numpy as np
import pytest

from mwkit.cli import main, load_simplex, simplex_to_document
from mwkit.width import regular_simplex, regular_tetrahedron_width


def write_simplex(path, S, metadata=None):
    with open(path, "w") as fh:
        json.dump(simplex_to_document(S, metadata), fh)
    return str(path)


@pytest.fixture
def regular3(tmp_path):
    return write_simplex(tmp_path / "reg3.json", regular_simplex(3))


@pytest.fixture
def regular4(tmp_path):
    return write_simplex(tmp_path / "reg4.json", regular_simplex(4))


class TestLoadSimplex:
    def test_roundtrip(self, regular3):
        S = load_simplex(regular3)
        assert S.d == 3
        assert np.max(np.abs(S.vertices - regular_simplex(3).vertices)) < 1e-15

    def test_missing_file(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            load_simplex(str(tmp_path / "nope.json"))
        assert exc.value.code == 5

    def test_bad_shape(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"d": 3, "vertices": [[1, 0, 0]], "metadata": {}}))
        with pytest.raises(SystemExit) as exc:
            load_simplex(str(p))
        assert exc.value.code == 5

    def test_auto_normalize(self, tmp_path):
        V = regular_simplex(3).vertices * (1 + 1e-6)
        p = tmp_path / "off.json"
        p.write_text(json.dumps({"d": 3, "vertices": V.tolist(), "metadata": {}}))
        S = load_simplex(str(p), auto_normalize=True)
        assert np.max(np.abs(np.linalg.norm(S.vertices, axis=1) - 1.0)) < 1e-12


class TestWidthCommand:
    def test_exact3d(self, regular3, capsys):
        assert main(["width", regular3]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["method"] == "exact3d"
        assert abs(out["value"] - regular_tetrahedron_width()) < 1e-12

    def test_exact3d_wrong_dimension(self, regular4):
        assert main(["width", regular4, "--method", "exact3d"]) == 2

    def test_mc_method(self, regular4, capsys):
        assert main(["width", regular4, "--method", "mc",
                     "--samples", "50000"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["std_error"] > 0.0

    def test_infeasible(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        V = rng.standard_normal((4, 3))
        V[:, 2] = np.abs(V[:, 2]) + 0.2  # one open hemisphere
        V /= np.linalg.norm(V, axis=1, keepdims=True)
        p = tmp_path / "inf.json"
        p.write_text(json.dumps({"d": 3, "vertices": V.tolist(), "metadata": {}}))
        assert main(["width", str(p)]) == 3
        out = json.loads(capsys.readouterr().out)
        assert out["error"] == "infeasible simplex"
        assert not out["hemisphere_cover"]

    def test_out_file(self, regular3, tmp_path):
        dest = tmp_path / "w.json"
        assert main(["width", regular3, "--out", str(dest)]) == 0
        assert abs(json.loads(dest.read_text())["value"]
                   - regular_tetrahedron_width()) < 1e-12


class TestDecomposeCommand:
    def test_d3_payload(self, regular3, capsys):
        assert main(["decompose", regular3]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["n_path_simplices"] == 24
        assert out["audit"]["all_ok"]
        signs = [e["sign"] for e in out["entries"]]
        assert set(signs) <= {-1, 1}
        for e in out["entries"]:
            G = np.array(e["gram"])
            off = G - np.tril(np.triu(G, -1), 1)
            assert np.max(np.abs(off)) < 1e-9

    def test_d4_level_sums(self, regular4, capsys):
        assert main(["decompose", regular4]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["n_path_simplices"] == 120
        sums = np.array(out["level_angle_sums"])
        assert np.max(np.abs(sums - 40 * np.pi)) < 1e-7

    def test_degenerate_without_jiggle(self, tmp_path):
        # two antipodal pairs: complex vertices are not unique
        V = np.array([[1.0, 0, 0], [-1.0, 0, 0], [0, 1.0, 0], [0, -1.0, 0]])
        p = tmp_path / "deg.json"
        p.write_text(json.dumps({"d": 3, "vertices": V.tolist(), "metadata": {}}))
        assert main(["decompose", str(p)]) == 4

    def test_degenerate_with_jiggle(self, tmp_path, capsys):
        V = np.array([[1.0, 0, 0], [-1.0, 0, 0], [0, 1.0, 0], [0, -1.0, 0]])
        p = tmp_path / "deg.json"
        p.write_text(json.dumps({"d": 3, "vertices": V.tolist(), "metadata": {}}))
        code = main(["decompose", str(p), "--jiggle"])
        if code == 0:
            out = json.loads(capsys.readouterr().out)
            assert out["n_path_simplices"] == 24
        else:
            # jiggle is best-effort; a still-degenerate draw reports 4
            assert code == 4


class TestHessianCommand:
    def test_scan(self, capsys):
        assert main(["hessian", "--grid", "40"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["violations_f_AA"] == 0
        assert out["violations_det"] == 0

    def test_csv_out(self, tmp_path, capsys):
        dest = tmp_path / "scan.csv"
        assert main(["hessian", "--grid", "10", "--out", str(dest)]) == 0
        header = dest.read_text().splitlines()[0]
        assert header == "A,B,f,f_AA,det_hess,reduced_det,fd_gap"

    def test_bad_grid(self):
        assert main(["hessian", "--grid", "1"]) == 2


class TestOptimizeCommand:
    def test_d3_run(self, tmp_path, capsys):
        trace = tmp_path / "trace.csv"
        final = tmp_path / "final.json"
        assert main(["optimize", "-d", "3", "--seed", "3", "--restarts", "1",
                     "--out", str(trace), "--simplex-out", str(final)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert abs(out["width"] - regular_tetrahedron_width()) < 1e-4
        assert out["regularity_metric"] < 1e-2
        rows = trace.read_text().splitlines()
        assert rows[0] == "iteration,width,step,regularity_metric"
        assert len(rows) == out["iterations"] + 2  # header + initial state
        doc = json.loads(final.read_text())
        assert np.array(doc["vertices"]).shape == (4, 3)
        assert "width" in doc["metadata"]

    def test_warm_start(self, regular3, capsys):
        assert main(["optimize", "-d", "3", "--init", regular3,
                     "--max-iter", "3"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert abs(out["width"] - regular_tetrahedron_width()) < 1e-9


class TestSelftestCommand:
    def test_passes(self, capsys):
        assert main(["selftest", "--samples", "100000"]) == 0
        assert "all checks passed" in capsys.readouterr().out

    def test_wrong_prefactor_fails(self, capsys):
        assert main(["selftest", "--samples", "100000",
                     "--force-mat-prefactor", "d-2"]) == 1
        out = capsys.readouterr().out
        assert "FAIL" in out and "prefactor" in out
