import csv
import json
import os

import pytest

from htaspec import cli


def run(args):
    return cli.main(args)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestSpectrum:
    def test_writes_tables_and_curves(self, tmp_path):
        assert run(["spectrum", "--out", str(tmp_path)]) == 0
        for meson in ("ccbar", "bbbar", "bcbar"):
            assert (tmp_path / f"{meson}_spectrum.csv").exists()
            assert (tmp_path / f"fig1_{meson}.csv").exists()
            assert (tmp_path / f"fig2_{meson}.csv").exists()

    def test_ccbar_ground_state_value(self, tmp_path):
        run(["spectrum", "--meson", "ccbar", "--out", str(tmp_path)])
        rows = read_csv(tmp_path / "ccbar_spectrum.csv")
        row = next(r for r in rows if r["label"] == "1S")
        assert float(r_val := row["model_mass"]) == pytest.approx(3.097, abs=15e-3)
        assert row["n"] == "0" and row["l"] == "0"
        assert row["branch"] == "+"

    def test_missing_input_exits_2(self, tmp_path):
        assert run(["spectrum", "--input", "/no/such/file.json", "--out", str(tmp_path)]) == 2

    def test_unknown_meson_exits_2(self, tmp_path):
        assert run(["spectrum", "--meson", "zzbar", "--out", str(tmp_path)]) == 2

    def test_energy_stub_gives_constituent_sums(self, tmp_path):
        run(["spectrum", "--meson", "ccbar", "--out", str(tmp_path), "--e-stub-zero"])
        rows = read_csv(tmp_path / "ccbar_spectrum.csv")
        assert all(float(r["model_mass"]) == pytest.approx(2.46, abs=1e-12) for r in rows)

    def test_byte_identical_reruns(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        run(["spectrum", "--out", str(d1)])
        run(["spectrum", "--out", str(d2)])
        for name in os.listdir(d1):
            assert (d1 / name).read_bytes() == (d2 / name).read_bytes()

    def test_nonphysical_params_exit_3(self, tmp_path):
        doc = {
            "mesons": [
                {
                    "label": "bad",
                    "m_q": 1.0,
                    "m_qbar": 1.0,
                    "params": {"real7": {"a": -1.0, "b": 0.5, "delta": -0.5}},
                    "levels": [{"label": "1S", "exp_mass": 2.5}],
                }
            ]
        }
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(doc))
        assert run(["spectrum", "--input", str(p), "--out", str(tmp_path)]) == 3


class TestFit:
    def test_seed_from_paper_never_worse(self, tmp_path, dataset):
        from htaspec import fitting
        from htaspec.core import Variant

        code = run(["fit", "--meson", "ccbar", "--seed-from-paper", "--out", str(tmp_path)])
        assert code == 0
        rows = read_csv(tmp_path / "fitted_params.csv")
        assert len(rows) == 1
        rec = dataset["ccbar"]
        base = fitting.residual(rec.system(Variant.REAL), rec.experimental_levels(Variant.REAL))
        assert float(rows[0]["residual_rms"]) <= base + 1e-12
        assert rows[0]["converged"] == "true"

    def test_underdetermined_exits_4(self, tmp_path):
        assert run(["fit", "--meson", "bcbar", "--out", str(tmp_path)]) == 4

    def test_fit_recovers_parameters(self, tmp_path):
        code = run(["fit", "--meson", "bbbar", "--out", str(tmp_path)])
        assert code == 0
        rows = read_csv(tmp_path / "fitted_params.csv")
        assert float(rows[0]["a"]) == pytest.approx(-0.7383, rel=0.05)
        assert float(rows[0]["delta"]) == pytest.approx(1.1871, rel=0.05)


class TestGridScan:
    def test_single_cell_grid(self, tmp_path):
        code = run(
            [
                "grid", "--meson", "ccbar", "--state", "1S", "--out", str(tmp_path),
                "--rmin", "1.0", "--rmax", "1.0", "--rsteps", "1",
                "--pmin", "0.2", "--pmax", "0.2", "--psteps", "1",
                "--no-normalize",
            ]
        )
        assert code == 0
        rows = read_csv(tmp_path / "ccbar_1S_grid.csv")
        assert len(rows) == 1
        assert set(rows[0]) == {"r", "p_r", "re", "im", "density"}
        amp2 = float(rows[0]["re"]) ** 2 + float(rows[0]["im"]) ** 2
        assert float(rows[0]["density"]) == pytest.approx(amp2, rel=1e-12)

    def test_grid_requires_single_meson(self, tmp_path):
        assert run(["grid", "--out", str(tmp_path)]) == 2
    def test_grid_momentum_coupled_variant(self, tmp_path):
        code = run(
            ["grid", "--meson", "ccbar", "--variant", "complex5", "--state", "1S",
             "--rmin", "0.5", "--rmax", "2.0", "--rsteps", "2",
             "--pmin", "0.0", "--pmax", "0.4", "--psteps", "2",
             "--no-normalize", "--out", str(tmp_path)]
        )
        assert code == 0
        rows = read_csv(tmp_path / "ccbar_1S_grid.csv")
        assert len(rows) == 4

    def test_grid_momentum_coupled_excited_exits_3(self, tmp_path):
        assert run(
            ["grid", "--meson", "ccbar", "--variant", "complex5", "--state", "2S",
             "--n", "1", "--out", str(tmp_path)]
        ) == 3

    def test_grid_bad_axis_exits_2(self, tmp_path):
        assert run(
            ["grid", "--meson", "ccbar", "--rmin", "2.0", "--rmax", "1.0",
             "--rsteps", "4", "--out", str(tmp_path)]
        ) == 2

    def test_scan_symmetry_two_a_values(self, tmp_path):
        code = run(
            ["scan", "--meson", "bcbar", "--param", "a", "--lo", "-10", "--hi", "110",
             "--steps", "241", "--out", str(tmp_path)]
        )
        assert code == 0
        rows = read_csv(tmp_path / "bcbar_scan_a.csv")
        assert len(rows) == 241
        # mirror symmetry about a* = 3b/delta^2: the two branches of the
        # curve attain each mass twice
        good = [(float(r["value"]), float(r["mass"])) for r in rows if r["physical"] == "true"]
        a_star = 3 * 0.5157 / 0.1763**2
        by_value = dict(good)
        hits = 0
        for a, mass in good:
            mirror = 2 * a_star - a
            close = [m for aa, m in good if abs(aa - mirror) < 0.26]
            if close:
                assert min(abs(m - mass) for m in close) < 0.05
                hits += 1
        assert hits > 100

    def test_scan_bad_interval_exits_2(self, tmp_path):
        assert run(["scan", "--meson", "ccbar", "--param", "a", "--lo", "2", "--hi", "1", "--out", str(tmp_path)]) == 2


class TestCheck:
    def test_nu_suite_passes(self, capsys):
        assert run(["check", "--suite", "nu"]) == 0
        out = capsys.readouterr().out
        assert "PASS nu-vs-closed-form" in out

    def test_moment_suite_passes(self, capsys):
        assert run(["check", "--suite", "moment"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 6


class TestHelp:
    @pytest.mark.parametrize("sub", ["spectrum", "fit", "grid", "scan", "check"])
    def test_help_exits_zero(self, sub):
        with pytest.raises(SystemExit) as exc:
            cli.main([sub, "--help"])
        assert exc.value.code == 0


class TestComparisonReport:
    def test_comparison_csv_written(self, tmp_path, capsys):
        run(["spectrum", "--meson", "ccbar", "--out", str(tmp_path)])
        rows = read_csv(tmp_path / "ccbar_comparison.csv")
        assert rows[0]["label"] == "1S"
        assert float(rows[0]["model"]) == pytest.approx(3.097, abs=15e-3)
        out = capsys.readouterr().out
        assert "== ccbar (real7) ==" in out
        assert "measured" in out
