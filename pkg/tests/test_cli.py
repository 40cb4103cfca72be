import csv
import io
import json
import subprocess
import sys

import pytest

import warpcurv.closed_forms as closed_forms
import warpcurv.cone as cone
import warpcurv.planes as planes
import warpcurv.warp as warp
from warpcurv.cli import EXIT_FAIL, EXIT_NUMERICS, EXIT_PASS, EXIT_USAGE, build_parser, main, render_csv


def run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--output", str(out)])
    return code, out


def load(path):
    return json.loads(path.read_text())


class TestParser:
    def test_alpha_and_d_exclusive(self, capsys):
        with pytest.raises(SystemExit) as info:
            build_parser().parse_args(["bounds", "--alpha", "0.01", "--d", "2"])
        assert info.value.code == EXIT_USAGE

    def test_unknown_flag(self):
        with pytest.raises(SystemExit) as info:
            main(["radial", "--bogus"])
        assert info.value.code == EXIT_USAGE

    def test_missing_command(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == EXIT_USAGE

    def test_seed_default(self):
        assert build_parser().parse_args(["bounds", "--d", "2"]).seed == 42


class TestVerifyCurvature:
    def test_plain(self, tmp_path):
        code, out = run(["verify-curvature", "--n", "3", "--alpha", "0", "--grid", "10"], tmp_path)
        doc = load(out)
        assert code == EXIT_PASS and doc["pass"]
        assert doc["max_error"] < 1e-10
        assert set(doc) == {"config", "results", "pass", "max_error", "runtime_ms"}
        assert doc["runtime_ms"] is None

    def test_degree_two(self, tmp_path):
        code, out = run(["verify-curvature", "--n", "3", "--d", "2", "--grid", "10"], tmp_path)
        assert code == EXIT_PASS
        assert load(out)["config"]["alpha"] == 343 / 4096

    def test_alpha_above_max(self, tmp_path):
        code, out = run(["verify-curvature", "--n", "3", "--alpha", "0.2"], tmp_path)
        assert code == EXIT_USAGE
        assert not out.exists()

    def test_other_dimension(self, tmp_path):
        code, out = run(["verify-curvature", "--n", "4", "--alpha", "-0.5", "--grid", "4"], tmp_path)
        assert code == EXIT_PASS
        assert load(out)["config"]["engine"] is False

    def test_tolerance_override_can_fail(self, tmp_path):
        code, _ = run(["verify-curvature", "--d", "2", "--grid", "3", "--conn-tol", "0", "--rtol", "0"], tmp_path)
        assert code == EXIT_FAIL

    def test_mutation(self, tmp_path, monkeypatch):
        real = closed_forms.riemann_closed_form

        def mutated(u, profile, n):
            T = real(u, profile, n)
            T.R = T.R * 1.001
            return T

        monkeypatch.setattr(closed_forms, "riemann_closed_form", mutated)
        code, _ = run(["verify-curvature", "--d", "2", "--grid", "3"], tmp_path)
        assert code == EXIT_FAIL


class TestConeTable:
    def test_rows(self, tmp_path):
        code, out = run(["cone-table", "--n", "3"], tmp_path)
        rows = load(out)["results"]
        assert code == EXIT_PASS
        first = rows[0]
        assert (first["d"], first["alpha"], first["u_alpha"], first["c_alpha"]) == (1, 0.0, 1.0, 1.0)
        two = rows[1]
        assert two["alpha"] == pytest.approx(0.0837402, abs=1e-7)
        assert two["u_alpha"] == pytest.approx(0.935414, abs=1e-6)
        assert two["c_alpha"] == pytest.approx(0.5, abs=1e-12)
        for row in rows[1:]:
            assert abs(row["c_numeric"] - row["c_alpha"]) <= 1e-4

    def test_csv_precision(self, tmp_path):
        code, out = run(["cone-table", "--n", "3", "--d-max", "3", "--format", "csv"], tmp_path, "t.csv")
        rows = list(csv.DictReader(io.StringIO(out.read_text())))
        assert code == EXIT_PASS
        assert list(rows[0]) == ["d", "alpha", "u_alpha", "c_alpha", "c_numeric", "lower", "upper", "pass"]
        assert float(rows[1]["u_alpha"]) == cone.largest_root(343 / 4096, 3)

    def test_mutation(self, tmp_path, monkeypatch):
        real = cone.largest_root
        monkeypatch.setattr(cone, "largest_root", lambda a, n: real(a, n) * (1 + 1e-4))
        code, _ = run(["cone-table", "--n", "3", "--d-max", "4"], tmp_path)
        assert code == EXIT_FAIL


class TestBounds:
    def test_degree_two(self, tmp_path):
        code, out = run(["bounds", "--n", "3", "--d", "2", "--samples", "100000", "--seed", "42"], tmp_path)
        row = load(out)["results"][0]
        assert code == EXIT_PASS
        assert row["observed_min"] == pytest.approx(-40 / 7, abs=1e-12)
        assert row["observed_max"] == pytest.approx(-4 / 7, abs=1e-12)

    def test_negative_alpha_rejected(self, tmp_path):
        code, _ = run(["bounds", "--alpha", "-0.1"], tmp_path)
        assert code == EXIT_USAGE

    def test_u_below_root(self, tmp_path):
        code, _ = run(["bounds", "--d", "2", "--u", "0.5"], tmp_path)
        assert code == EXIT_USAGE

    def test_mutation(self, tmp_path, monkeypatch):
        real = closed_forms.riemann_alpha

        def mutated(u, alpha, n):
            T = real(u, alpha, n)
            T.R = T.R * 1.01
            return T

        monkeypatch.setattr(planes, "riemann_alpha", mutated)
        code, _ = run(["bounds", "--d", "2", "--samples", "1000"], tmp_path)
        assert code == EXIT_FAIL


class TestRadial:
    def test_degree_two(self, tmp_path):
        code, out = run(["radial", "--n", "3", "--d", "2", "--rmax", "5"], tmp_path)
        doc = load(out)
        assert code == EXIT_PASS
        assert doc["max_error"] <= 1e-6
        assert doc["results"][-1]["r"] == pytest.approx(5.0)

    def test_plain_matches_cosh(self, tmp_path):
        code, out = run(["radial", "--alpha", "0", "--rmax", "3"], tmp_path)
        assert code == EXIT_PASS
        assert load(out)["config"]["cosh_gap"] <= 1e-8

    def test_degenerate(self, tmp_path):
        code, _ = run(["radial", "--alpha", repr(cone.alpha_max(3))], tmp_path)
        assert code == EXIT_USAGE

    def test_numerics_failure(self, tmp_path, monkeypatch):
        monkeypatch.setattr(warp, "gh_ode_residual", lambda f, f1, f2, n: float("nan"))
        code, _ = run(["radial", "--d", "2", "--rmax", "0.5"], tmp_path)
        assert code == EXIT_NUMERICS

    def test_mutation(self, tmp_path, monkeypatch):
        real = warp.gh_ode_residual
        monkeypatch.setattr(warp, "gh_ode_residual", lambda f, f1, f2, n: real(f, f1, f2, n + 1))
        code, _ = run(["radial", "--d", "2", "--rmax", "1"], tmp_path)
        assert code == EXIT_FAIL


class TestDeficit:
    def test_report_shape(self, tmp_path):
        code, out = run(["deficit", "--n", "3", "--d", "2", "--eta", "8", "--samples", "2000", "--grid", "10"], tmp_path)
        doc = load(out)
        summary = doc["results"][-1]
        assert summary["kind"] == "summary"
        assert summary["support_pass"] and summary["l2_decreasing_pass"] and summary["curvature_negative_pass"]
        assert [r["eta"] for r in doc["results"][:-1]] == [4.0, 6.0, 8.0, 10.0]
        assert code in (EXIT_PASS, EXIT_FAIL)

    def test_degree_two_slope(self, tmp_path):
        code, out = run(["deficit", "--n", "3", "--d", "2", "--eta", "8"], tmp_path)
        summary = load(out)["results"][-1]
        assert summary["slope_pass"], f"log-sup slope {summary['slope']:.4f} vs {summary['slope_target']}"
        assert code == EXIT_PASS

    def test_bad_eta(self, tmp_path):
        code, _ = run(["deficit", "--d", "2", "--eta", "1"], tmp_path)
        assert code == EXIT_USAGE

    def test_mutation(self, tmp_path, monkeypatch):
        import warpcurv.deficit as deficit

        real = deficit.deficit_diagonal

        def leaky(profile, n, u):
            d_h, d_f = real(profile, n, u)
            return d_h + 1e-9, d_f

        monkeypatch.setattr(deficit, "deficit_diagonal", leaky)
        code, _ = run(["deficit", "--d", "2", "--samples", "500", "--grid", "5", "--etas", "4", "6"], tmp_path)
        assert code == EXIT_FAIL


class TestReproducibility:
    @pytest.mark.parametrize(
        "argv",
        [
            ["bounds", "--d", "2", "--samples", "20000"],
            ["cone-table", "--n", "2", "--format", "csv"],
            ["verify-curvature", "--d", "3", "--grid", "3"],
        ],
    )
    def test_byte_identical(self, argv, tmp_path):
        _, a = run(argv, tmp_path, "a.out")
        _, b = run(argv, tmp_path, "b.out")
        assert a.read_bytes() == b.read_bytes()

    def test_thread_count_does_not_matter(self, tmp_path, monkeypatch):
        monkeypatch.setenv("WARPCURV_THREADS", "1")
        _, a = run(["bounds", "--d", "2", "--samples", "30000"], tmp_path, "a.json")
        monkeypatch.setenv("WARPCURV_THREADS", "8")
        _, b = run(["bounds", "--d", "2", "--samples", "30000"], tmp_path, "b.json")
        assert a.read_bytes() == b.read_bytes()

    def test_timing_flag(self, tmp_path):
        _, out = run(["cone-table", "--d-max", "2", "--timing"], tmp_path)
        assert load(out)["runtime_ms"] > 0


class TestRenderCsv:
    def test_union_of_keys(self):
        text = render_csv([{"a": 1.0, "b": True}, {"a": 0.1, "c": None}])
        lines = text.splitlines()
        assert lines[0] == "a,b,c"
        assert lines[1] == "1,true,"
        assert lines[2] == "0.10000000000000001,,"


class TestConsoleScript:
    def test_module_entry(self, tmp_path):
        out = tmp_path / "o.json"
        proc = subprocess.run(
            [sys.executable, "-m", "warpcurv.cli", "verify-curvature", "--alpha", "0.2", "-o", str(out)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == EXIT_USAGE
        assert "alpha_max" in proc.stderr
