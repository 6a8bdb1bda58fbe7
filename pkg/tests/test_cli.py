"""Initial-condition grammar, CSV/SVG emission, CLI commands, exit codes."""

import csv
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from hydrobench import cli
from hydrobench.cli import RunConfig, emit_outputs, main
from hydrobench.initial_conditions import ICParseError, parse_initial_condition, realize

ACOUSTIC_PERIOD = 2.0 * math.pi / math.sqrt(5.0 / 3.0)


class TestICGrammar:
    def test_single_term(self):
        spec = parse_initial_condition("u:1:1.0")
        assert len(spec.terms) == 1
        term = spec.terms[0]
        assert (term.field, term.mode, term.amplitude, term.phase) == ("u", 1, 1.0, 0.0)

    def test_two_terms_with_phase(self):
        spec = parse_initial_condition("u:1:1.0:0.0,p:2:0.5:1.5708")
        assert len(spec.terms) == 2
        assert spec.terms[1].field == "p"
        assert spec.terms[1].phase == pytest.approx(1.5708)

    def test_whitespace_ignored(self):
        spec = parse_initial_condition("  u : 1 : 1.0 ,  s : 3 : 0.25 ")
        assert [t.field for t in spec.terms] == ["u", "s"]

    def test_unknown_field_named_in_error(self):
        with pytest.raises(ICParseError, match="x"):
            parse_initial_condition("x:1:1.0")

    def test_error_carries_position(self):
        with pytest.raises(ICParseError) as info:
            parse_initial_condition("u:1:1.0,q:2:1.0")
        assert info.value.position == 8

    def test_non_integer_mode(self):
        with pytest.raises(ICParseError, match="integer"):
            parse_initial_condition("u:one:1.0")

    def test_mode_too_large_for_grid(self):
        with pytest.raises(ICParseError, match="grid"):
            parse_initial_condition("u:9:1.0", grid_size=16)

    def test_empty_string(self):
        with pytest.raises(ICParseError):
            parse_initial_condition("")

    def test_realize_sinusoid(self):
        fields = realize(parse_initial_condition("u:2:0.5"), 32)
        x = 2.0 * np.pi * np.arange(32) / 32
        assert fields["u"] == pytest.approx(0.5 * np.sin(2 * x))
        assert np.all(fields["p"] == 0)

    def test_realize_phase_shift(self):
        fields = realize(parse_initial_condition(f"p:1:1:{np.pi / 2}"), 32)
        x = 2.0 * np.pi * np.arange(32) / 32
        assert fields["p"] == pytest.approx(np.cos(x))

    def test_empty_spec_rejected_directly(self):
        from hydrobench.initial_conditions import ICSpec

        with pytest.raises(ValueError):
            ICSpec(terms=())


class TestEmitOutputs:
    def test_single_row(self, tmp_path):
        path = tmp_path / "one.csv"
        emit_outputs(["a", "b"], [[1.5, "x"]], path)
        assert path.read_text() == "a,b\n1.5,x\n"

    def test_reals_round_trip(self, tmp_path):
        values = [math.pi, 1.0 / 3.0, 2e-15, -7.123456789012345e100]
        path = tmp_path / "floats.csv"
        emit_outputs(["v"], [[v] for v in values], path)
        with open(path) as fh:
            rows = list(csv.DictReader(fh))
        for value, row in zip(values, rows):
            assert float(row["v"]) == value

    def test_rejects_empty_and_ragged(self, tmp_path):
        with pytest.raises(ValueError):
            emit_outputs(["a"], [], tmp_path / "no.csv")
        with pytest.raises(ValueError):
            emit_outputs(["a", "b"], [[1, 2], [3]], tmp_path / "no.csv")

    def test_svg_deterministic_and_well_formed(self, tmp_path):
        header = ["t", "y"]
        rows = [[float(i), math.sin(i / 3.0)] for i in range(20)]
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        emit_outputs(header, rows, first, emit_svg=True, title="chart")
        emit_outputs(header, rows, second, emit_svg=True, title="chart")
        svg_a = (tmp_path / "a.svg").read_bytes()
        svg_b = (tmp_path / "b.svg").read_bytes()
        assert svg_a == svg_b
        root = ET.fromstring(svg_a)
        assert root.tag.endswith("svg")
        assert root.attrib["width"] == "800"
        assert root.attrib["height"] == "600"


class TestDispersionCommand:
    def test_row_count_contract(self, tmp_path):
        out = tmp_path / "disp.csv"
        code = main(
            [
                "dispersion",
                "--model",
                "burnett",
                "--eps",
                "0.1",
                "--kmin",
                "0.1",
                "--kmax",
                "4",
                "--samples",
                "64",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 64 * 3
        assert set(r["branch"] for r in rows) == {"entropy", "sound_plus", "sound_minus"}

    def test_rows_sorted_by_model_k_branch(self, tmp_path):
        out = tmp_path / "disp.csv"
        main(
            [
                "dispersion",
                "--model",
                "moment_reference,euler",
                "--eps",
                "0.1",
                "--kmin",
                "0.5",
                "--kmax",
                "2",
                "--samples",
                "4",
                "--out",
                str(out),
            ]
        )
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        keys = [(r["model"], float(r["k"]), r["branch"]) for r in rows]
        assert keys == sorted(keys)
        assert len(rows) == 4 * 3 + 4 * 5


class TestEvolveCommand:
    def test_full_acoustic_period_returns_to_start(self, tmp_path):
        out = tmp_path / "evolve.csv"
        period = repr(ACOUSTIC_PERIOD)
        code = main(
            [
                "evolve",
                "--model",
                "euler",
                "--ic",
                "u:1:1",
                "--tmax",
                period,
                "--dt-out",
                period,
                "--grid-size",
                "32",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        start = [r for r in rows if float(r["t"]) == 0.0]
        end = [r for r in rows if float(r["t"]) != 0.0]
        assert len(start) == len(end) == 32
        worst = max(
            max(abs(float(a["u"]) - float(b["u"])), abs(float(a["p"]) - float(b["p"])))
            for a, b in zip(start, end)
        )
        assert worst <= 1e-10

    def test_moment_reference_model_supported(self, tmp_path):
        out = tmp_path / "mom.csv"
        code = main(
            [
                "evolve",
                "--model",
                "moment_reference",
                "--ic",
                "u:1:1",
                "--eps",
                "0.1",
                "--tmax",
                "2",
                "--dt-out",
                "1",
                "--grid-size",
                "16",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 3 * 16


class TestCompareCommand:
    def test_columns_and_zero_start(self, tmp_path):
        out = tmp_path / "cmp.csv"
        code = main(
            [
                "compare",
                "--model",
                "burnett",
                "--model",
                "navier_stokes",
                "--ic",
                "u:1:1",
                "--eps",
                "0.1",
                "--tmax",
                "4",
                "--dt-out",
                "2",
                "--grid-size",
                "16",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        with open(out) as fh:
            reader = csv.DictReader(fh)
            assert reader.fieldnames == ["t", "l2_error_burnett", "l2_error_navier_stokes"]
            rows = list(reader)
        assert float(rows[0]["l2_error_burnett"]) == 0.0
        assert all(float(r["l2_error_burnett"]) >= 0.0 for r in rows)


class TestSecularCommand:
    def test_series_columns(self, tmp_path):
        out = tmp_path / "sec.csv"
        code = main(
            [
                "secular",
                "--ic",
                "u:1:1",
                "--eps",
                "0.1",
                "--tmax",
                "50",
                "--dt-out",
                "5",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        with open(out) as fh:
            reader = csv.DictReader(fh)
            assert reader.fieldnames == ["t", "naive_ratio", "multiscale_ratio"]
            rows = list(reader)
        naive = [float(r["naive_ratio"]) for r in rows]
        assert naive == sorted(naive)

    def test_beyond_horizon_is_usage_error(self, tmp_path):
        code = main(
            [
                "secular",
                "--ic",
                "u:1:1",
                "--eps",
                "0.1",
                "--tmax",
                "500",
                "--dt-out",
                "5",
                "--out",
                str(tmp_path / "sec.csv"),
            ]
        )
        assert code == 1


class TestDeterminismAndConfig:
    def test_identical_config_identical_bytes(self, tmp_path):
        args = [
            "dispersion",
            "--model",
            "burnett",
            "--eps",
            "0.1",
            "--kmin",
            "0.2",
            "--kmax",
            "2",
            "--samples",
            "16",
            "--svg",
        ]
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()

    def test_config_file_with_flag_override(self, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text(
            "model=burnett\neps=0.1\nkmin=0.5\nkmax=2.0\nsamples=8\n"
            f"out={tmp_path / 'from_config.csv'}\n"
        )
        code = main(["dispersion", "--config", str(config), "--samples", "4"])
        assert code == 0
        with open(tmp_path / "from_config.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 4 * 3  # flag wins over the config value of 8


class TestSvgShapes:
    def test_evolve_svg_charts_snapshot_against_x(self, tmp_path):
        out = tmp_path / "evo.csv"
        code = main(
            [
                "evolve",
                "--model",
                "euler",
                "--ic",
                "u:1:1",
                "--tmax",
                "2",
                "--dt-out",
                "1",
                "--grid-size",
                "16",
                "--out",
                str(out),
                "--svg",
            ]
        )
        assert code == 0
        svg = (tmp_path / "evo.svg").read_text()
        # x axis labeled with the spatial coordinate, u/p/s series present
        assert ">x</text>" in svg
        for name in ("u", "p", "s"):
            assert f">{name}</text>" in svg

    def test_dispersion_svg_one_polyline_per_branch_component(self, tmp_path):
        out = tmp_path / "disp.csv"
        code = main(
            [
                "dispersion",
                "--model",
                "euler",
                "--eps",
                "0.1",
                "--kmin",
                "0.5",
                "--kmax",
                "2",
                "--samples",
                "8",
                "--out",
                str(out),
                "--svg",
            ]
        )
        assert code == 0
        svg = (tmp_path / "disp.svg").read_text()
        # 3 branches x (re, im) = 6 polylines
        assert svg.count("<polyline") == 6


class TestExitCodes:
    def test_usage_error_bad_model(self, tmp_path):
        code = main(
            [
                "dispersion",
                "--model",
                "bogus",
                "--out",
                str(tmp_path / "x.csv"),
            ]
        )
        assert code == 1

    def test_usage_error_missing_ic(self, tmp_path):
        code = main(
            ["evolve", "--model", "euler", "--tmax", "1", "--dt-out", "1", "--out",
             str(tmp_path / "x.csv")]
        )
        assert code == 1

    def test_usage_error_bad_flag(self):
        assert main(["dispersion", "--nonsense"]) == 1

    def test_usage_error_two_models_for_evolve(self, tmp_path):
        code = main(
            [
                "evolve",
                "--model",
                "euler",
                "--model",
                "burnett",
                "--ic",
                "u:1:1",
                "--tmax",
                "1",
                "--dt-out",
                "1",
                "--out",
                str(tmp_path / "x.csv"),
            ]
        )
        assert code == 1

    def test_usage_error_compare_without_hydro_model(self, tmp_path):
        code = main(
            [
                "compare",
                "--model",
                "moment_reference",
                "--ic",
                "u:1:1",
                "--tmax",
                "1",
                "--dt-out",
                "1",
                "--out",
                str(tmp_path / "x.csv"),
            ]
        )
        assert code == 1

    def test_unwritable_output_path(self, tmp_path):
        code = main(
            [
                "dispersion",
                "--model",
                "euler",
                "--kmin",
                "0.5",
                "--kmax",
                "1",
                "--samples",
                "4",
                "--out",
                str(tmp_path / "no_such_dir" / "x.csv"),
            ]
        )
        assert code == 1

    def test_malformed_config_file(self, tmp_path):
        config = tmp_path / "bad.cfg"
        config.write_text("model burnett\n")
        assert main(["dispersion", "--config", str(config)]) == 1

    def test_branch_merge_exits_two_through_cli(self, tmp_path, capsys):
        # Tracking the kinetic moment branches across their real exceptional
        # point is a genuine numerical refusal, reported on one stderr line.
        code = main(
            [
                "dispersion",
                "--model",
                "moment_reference",
                "--eps",
                "0.1",
                "--kmin",
                "0.5",
                "--kmax",
                "4",
                "--samples",
                "60",
                "--out",
                str(tmp_path / "x.csv"),
            ]
        )
        assert code == 2
        err = capsys.readouterr().err
        assert err.count("\n") == 1
        assert "numerical failure" in err

    def test_numerical_failure_maps_to_two(self, tmp_path, monkeypatch):
        from hydrobench.dispersion import BranchCollisionError

        def explode(config):
            raise BranchCollisionError("synthetic collision")

        monkeypatch.setitem(cli.__dict__, "_cmd_dispersion", explode)
        config = RunConfig(
            command="dispersion",
            models=(cli.ModelId.BURNETT,),
            out_path=tmp_path / "x.csv",
        )
        assert cli.run(config) == 2

    def test_selftest_help_runs(self, capsys):
        assert main(["--help"]) == 0
        out = capsys.readouterr().out
        assert "dispersion" in out and "selftest" in out
