import json
import math

import pytest

from oscspec.cli import CSV_HEADER, emit_json, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSpectrum:
    def test_h3_exact_csv(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--geometry", "h3", "--mu", "30",
                           "--n-max", "1", "--l-max", "0", "--method", "exact",
                           "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == CSV_HEADER
        fields0 = lines[1].split(",")
        fields1 = lines[2].split(",")
        assert float(fields0[5]) == 7.5 and fields0[7] == "true"
        assert float(fields1[5]) == 13.5 and fields1[7] == "true"

    def test_e3_single_row_table(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--geometry", "e3", "--n-max", "0",
                           "--l-max", "0", "--method", "exact")
        assert code == 0
        data = [ln for ln in out.splitlines()[2:] if ln.strip()]
        assert len(data) == 1
        assert "1.5" in data[0]

    def test_s3_naive_json_values(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--geometry", "s3", "--mu", "30",
                           "--n-max", "0", "--l-max", "1", "--method", "wkb-naive",
                           "--format", "json")
        assert code == 0
        rows = json.loads(out)
        # 2*eps = N^2 + 2 sqrt(30) N - 1
        for row in rows:
            N = 2 * row["n"] + row["l"] + 1.5
            expected = (N * N + 2.0 * math.sqrt(30.0) * N - 1.0) / 2.0
            assert row["epsilon"] == pytest.approx(expected, rel=1e-12)

    def test_json_round_trips_byte_identical(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--geometry", "h3", "--mu", "30",
                           "--n-max", "5", "--l-max", "1", "--method", "wkb-corrected",
                           "--format", "json")
        assert code == 0
        assert emit_json(json.loads(out)) == out.strip()

    def test_unbound_rows_marked(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--geometry", "h3", "--mu", "30",
                           "--n-max", "2", "--l-max", "0", "--method", "exact",
                           "--format", "csv")
        assert code == 0
        last = out.strip().splitlines()[-1]
        assert last.endswith("false")

    def test_mu_forbidden_for_flat(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["spectrum", "--geometry", "e3", "--mu", "5"])
        assert exc.value.code == 2

    def test_mu_required_for_curved(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["spectrum", "--geometry", "h3"])
        assert exc.value.code == 2

    def test_ode_with_unbound_state_exits_3(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--geometry", "h3", "--mu", "30",
                           "--n-max", "2", "--l-max", "0", "--method", "ode",
                           "--format", "csv")
        assert code == 3
        lines = out.strip().splitlines()
        assert lines[-1].split(",")[5] == ""  # unconverged row has no epsilon

    def test_wavefunction_dump(self, capsys, tmp_path):
        path = tmp_path / "wf.csv"
        code, out, _ = run(capsys, "spectrum", "--geometry", "s3", "--mu", "30",
                           "--n-max", "0", "--l-max", "0", "--method", "ode",
                           "--format", "csv", "--dump-wavefunction", str(path))
        assert code == 0
        text = path.read_text().splitlines()
        assert text[0] == "# geometry: s3"
        assert any(ln.startswith("# epsilon:") for ln in text[:6])
        data = [ln for ln in text if ln and not ln.startswith("#") and ln != "r,u"]
        r0, u0 = data[0].split(",")
        assert float(r0) == 0.0 and float(u0) == 0.0
        assert len(data) > 2000


class TestContourCommand:
    def test_order1_matches_analytic(self, capsys):
        code, out, _ = run(capsys, "contour", "--geometry", "h3", "--mu", "30",
                           "--l", "0", "--epsilon", "7.5", "--order", "1",
                           "--scheme", "corrected")
        assert code == 0
        val = float(out.splitlines()[0].split(":")[1].split()[0])
        assert val == pytest.approx(-2.0 * math.pi, abs=1e-6)
        diff = float(out.splitlines()[2].split(":")[1])
        assert diff <= 1e-6

    def test_order2_magnitude_reported(self, capsys):
        code, out, _ = run(capsys, "contour", "--geometry", "e3", "--l", "0",
                           "--epsilon", "1.5", "--order", "2")
        assert code == 0
        mag = float(out.splitlines()[1].split(":")[1])
        assert mag <= 1e-6

    def test_no_classical_region_exits_4(self, capsys):
        code, _, err = run(capsys, "contour", "--geometry", "h3", "--mu", "30",
                           "--l", "0", "--epsilon", "20.0", "--order", "0")
        assert code == 4
        assert "quadrature failure" in err


class TestVerifyCommand:
    def test_flat_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--geometry", "e3", "--n-max", "1",
                           "--l-max", "1", "--tol", "1e-5")
        assert code == 0
        assert "verify: pass" in out

    def test_unreachable_tolerance_exits_5(self, capsys):
        code, _, err = run(capsys, "verify", "--geometry", "e3", "--n-max", "0",
                           "--l-max", "0", "--tol", "1e-14")
        assert code == 5
        assert "FAIL" in err

    def test_env_var_sets_default_tolerance(self, monkeypatch):
        from oscspec.cli import _default_tol

        monkeypatch.setenv("OSCSPEC_TOL", "3e-4")
        assert _default_tol() == 3e-4
        monkeypatch.delenv("OSCSPEC_TOL")
        assert _default_tol() == 1e-5


class TestSweepCommand:
    def test_naive_gap_column(self, capsys):
        code, out, _ = run(capsys, "sweep", "--geometry", "h3", "--mu-min", "30",
                           "--mu-max", "120", "--points", "3", "--n", "0", "--l", "0",
                           "--columns", "epsilon,naive_gap")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1] == "mu,epsilon,naive_gap"
        first = lines[2].split(",")
        assert float(first[0]) == pytest.approx(30.0, rel=1e-12)
        assert float(first[2]) == pytest.approx(0.090838, abs=1e-4)

    def test_flat_limit_column_approaches_N(self, capsys):
        code, out, _ = run(capsys, "sweep", "--geometry", "s3", "--mu-min", "1e2",
                           "--mu-max", "1e6", "--points", "5",
                           "--columns", "epsilon_over_sqrt_mu")
        assert code == 0
        vals = [float(ln.split(",")[1]) for ln in out.strip().splitlines()[2:]]
        assert all(b < a for a, b in zip(vals, vals[1:]))  # approaches 1.5 from above
        assert vals[-1] == pytest.approx(1.5, abs=2e-3)

    def test_unknown_column_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--geometry", "h3", "--mu-min", "1", "--mu-max", "10",
                  "--columns", "bogus"])
        assert exc.value.code == 2
