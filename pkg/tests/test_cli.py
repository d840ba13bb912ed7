"""CLI tests: subcommand schemas, exact mode, config/flag precedence,
determinism, output formats, exit codes, and the warning side channel."""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from multiraman.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestTable:
    def test_golden_exact(self, capsys):
        code, out, _ = run(capsys, "table", "--atom", "Cs", "--line", "D2",
                           "--qp", "1", "--qs", "1", "--exact")
        assert code == 0
        assert out == (GOLDEN / "table_cs_d2_pp_exact.csv").read_text()

    def test_golden_float(self, capsys):
        code, out, _ = run(capsys, "table", "--atom", "Cs")
        assert code == 0
        assert out == (GOLDEN / "table_cs_d2_pp_float.csv").read_text()

    def test_float_matches_exact_within_eps(self, capsys):
        _, out, _ = run(capsys, "table", "--atom", "Cs")
        _, rows = parse_csv(out)
        expected = {
            -3: (math.sqrt(7) / 24, 5 / 24, 11 / 24),
            0: (math.sqrt(16) / 24, 8 / 24, 8 / 24),
            2: (math.sqrt(12) / 24, 10 / 24, 6 / 24),
        }
        for row in rows:
            mf = int(row[0])
            if mf in expected:
                for got, want in zip(row[1:], expected[mf]):
                    assert abs(float(got) - want) < 1e-12

    def test_zp_pair(self, capsys):
        code, out, _ = run(capsys, "table", "--atom", "Cs", "--qp", "0",
                           "--qs", "1", "--exact")
        assert code == 0
        _, rows = parse_csv(out)
        by_mf = {row[0]: row[1] for row in rows}
        assert by_mf["3"] == "sqrt(1)/24"
        assert by_mf["-3"] == "sqrt(28)/24"

    def test_unsupported_pair_exit_code(self, capsys):
        code, out, err = run(capsys, "table", "--atom", "Cs", "--qp", "1", "--qs", "0")
        assert code == 1
        assert out == ""
        assert "(1,1)" in err and "(0,1)" in err

    def test_missing_atom(self, capsys):
        code, _, err = run(capsys, "table")
        assert code == 1 and "--atom" in err

    def test_unknown_atom(self, capsys):
        code, _, err = run(capsys, "table", "--atom", "Uuo")
        assert code == 1 and "catalog" in err

    def test_json_mirrors_csv(self, capsys):
        _, out_csv, _ = run(capsys, "table", "--atom", "Cs")
        _, out_json, _ = run(capsys, "table", "--atom", "Cs", "--format", "json")
        header, rows = parse_csv(out_csv)
        data = json.loads(out_json)
        assert len(data) == len(rows)
        for obj, row in zip(data, rows):
            assert list(obj) == header
            assert obj["gdot"] == float(row[1])

    def test_deterministic(self, capsys):
        _, first, _ = run(capsys, "table", "--atom", "Cs", "--seed", "3")
        _, second, _ = run(capsys, "table", "--atom", "Cs", "--seed", "3")
        assert first == second


class TestSpectrum:
    ARGS = ("spectrum", "--atom", "Cs", "--line", "D2", "--qp", "1", "--qs", "1",
            "--delta-hz", "1e9")

    def test_golden(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--pump-field", "100",
                           "--stokes-field", "150")
        assert code == 0
        assert out == (GOLDEN / "spectrum_cs_d2_pp.csv").read_text()

    def test_antisymmetric_lightshift(self, capsys):
        _, out, _ = run(capsys, *self.ARGS, "--pump-field", "100",
                        "--stokes-field", "100")
        _, rows = parse_csv(out)
        shifts = [float(r[2]) for r in rows]
        assert shifts == pytest.approx([-s for s in reversed(shifts)], rel=1e-12)

    def test_zero_stokes_field(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--pump-field", "100",
                           "--stokes-field", "0")
        assert code == 0
        _, rows = parse_csv(out)
        assert all(float(r[1]) == 0.0 for r in rows)

    def test_both_field_and_intensity_rejected(self, capsys):
        code, _, err = run(capsys, *self.ARGS, "--pump-field", "100",
                           "--pump-intensity", "10", "--stokes-field", "100")
        assert code == 1 and "exactly one" in err

    def test_intensity_conversion(self, capsys):
        from scipy import constants
        field = 100.0
        intensity = 0.5 * constants.epsilon_0 * constants.c * field**2
        _, out_field, _ = run(capsys, *self.ARGS, "--pump-field", str(field),
                              "--stokes-field", str(field))
        _, out_int, _ = run(capsys, *self.ARGS,
                            "--pump-intensity", repr(intensity),
                            "--stokes-intensity", repr(intensity))
        _, rows_f = parse_csv(out_field)
        _, rows_i = parse_csv(out_int)
        for rf, ri in zip(rows_f, rows_i):
            assert float(ri[1]) == pytest.approx(float(rf[1]), rel=1e-12)

    def test_warnings_on_stderr_not_stdout(self, capsys):
        # enormous fields break the regime; data stream stays clean
        code, out, err = run(capsys, "spectrum", "--atom", "Cs", "--qp", "1",
                             "--qs", "1", "--delta-hz", "1e6",
                             "--pump-field", "1e7", "--stokes-field", "1e7")
        assert code == 0
        assert "warning" in err and "regime" in err
        header, rows = parse_csv(out)
        assert header == ["mF", "OmegaB_rad_s", "DeltaB_rad_s", "envelope"]
        for row in rows:
            float(row[1])  # purely numeric

    def test_strict_regime_failure(self, capsys):
        code, _, err = run(capsys, "spectrum", "--atom", "Cs", "--qp", "1",
                           "--qs", "1", "--delta-hz", "1e6",
                           "--pump-field", "1e7", "--stokes-field", "1e7",
                           "--strict")
        assert code == 3

    def test_fig2_mode(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--fig2")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["I_x2", "mF", "gdot_pp", "gdot_zp"]
        spins = {int(r[0]) for r in rows}
        assert spins == {1, 3, 5, 7, 9}
        # spot value: cesium row at mF = 0
        cs_mf0 = [r for r in rows if r[0] == "7" and r[1] == "0"][0]
        assert float(cs_mf0[2]) == pytest.approx(math.sqrt(16) / 24, rel=1e-12)
        # strongest (0,1) coupling at the extremal negative mF for each spin
        for t_spin in (1, 3, 5, 7, 9):
            sub = [r for r in rows if int(r[0]) == t_spin]
            best = max(sub, key=lambda r: float(r[3]))
            assert float(best[1]) == -(t_spin - 1) / 2


class TestEvolve:
    ARGS = ("evolve", "--atom", "Cs", "--qp", "1", "--qs", "1",
            "--delta-hz", "1e9", "--mf", "0",
            "--pump-field", "200", "--stokes-field", "200")

    def test_initial_row_echoed(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--samples", "5")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["t_s", "p0", "p1"]
        assert [float(v) for v in rows[0]] == [0.0, 1.0, 0.0]

    def test_full_contrast_on_resonance(self, capsys):
        # mF = 0 with equal fields has zero lightshift, so delta = 0 is
        # effectively resonant and the default span is one full period
        _, out, _ = run(capsys, *self.ARGS, "--samples", "101")
        _, rows = parse_csv(out)
        p0 = [float(r[1]) for r in rows]
        assert min(p0) < 1e-6
        assert p0[-1] == pytest.approx(1.0, abs=1e-9)

    def test_oracle_columns(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--samples", "41", "--oracle",
                           "--delta-hz", "2e8")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["t_s", "p0", "p1", "p0_oracle", "p1_oracle"]
        for row in rows:
            assert abs(float(row[1]) - float(row[3])) < 0.02
            assert abs(float(row[2]) - float(row[4])) < 0.02

    def test_bad_mf(self, capsys):
        code, _, err = run(capsys, *self.ARGS, "--mf", "9")
        assert code == 1 and "mF" in err


class TestValidate:
    GOOD = ("validate", "--atom", "Cs", "--qp", "1", "--qs", "1",
            "--delta-hz", "1e9", "--pump-field", "100", "--stokes-field", "100")

    def test_passing_report(self, capsys):
        code, out, _ = run(capsys, *self.GOOD)
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["criterion", "margin_ratio", "required_ratio", "passed"]
        assert len(rows) == 3
        assert all(row[3] == "true" for row in rows)

    def test_resolution_failure(self, capsys):
        # couplings at the ground splitting scale
        code, out, _ = run(capsys, "validate", "--atom", "Cs", "--qp", "1",
                           "--qs", "1", "--delta-hz", "1e12",
                           "--pump-field", "2.6e8", "--stokes-field", "2.6e8")
        assert code == 0
        _, rows = parse_csv(out)
        by_name = {row[0]: row[3] for row in rows}
        assert by_name["ground-state resolution omega10 >> max coupling norm"] == "false"

    def test_single_photon_failure_when_delta_at_splitting(self, capsys):
        code, out, _ = run(capsys, "validate", "--atom", "Cs", "--qp", "1",
                           "--qs", "1", "--delta-hz", "9192631770",
                           "--pump-field", "1e4", "--stokes-field", "1e4")
        assert code == 0
        _, rows = parse_csv(out)
        by_name = {row[0]: row[3] for row in rows}
        assert by_name["other-leg detunings |Delta +- omega10| >> max coupling norm"] == "false"

    def test_strict_exit_code(self, capsys):
        code, out, err = run(capsys, "validate", "--atom", "Cs", "--qp", "1",
                             "--qs", "1", "--delta-hz", "1e6",
                             "--pump-field", "1e7", "--stokes-field", "1e7",
                             "--strict")
        assert code == 3
        assert "strict" in err
        assert out  # report still emitted


class TestEigs:
    def test_synthetic_schema(self, capsys):
        code, out, _ = run(capsys, "eigs", "--random-n", "6", "--seed", "5")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["index", "eigenvalue_rad_s", "kind", "reference_rad_s",
                          "deviation_rad_s", "bound_rad_s"]
        kinds = [row[2] for row in rows]
        assert kinds.count("ground_pair") == 2
        assert kinds.count("intermediate") == 6
        for row in rows:
            assert abs(float(row[4])) <= float(row[5])
            if row[2] == "intermediate":
                assert float(row[3]) == -100.0

    def test_synthetic_deterministic(self, capsys):
        _, first, _ = run(capsys, "eigs", "--random-n", "4", "--seed", "11")
        _, second, _ = run(capsys, "eigs", "--random-n", "4", "--seed", "11")
        assert first == second
        _, third, _ = run(capsys, "eigs", "--random-n", "4", "--seed", "12")
        assert first != third

    def test_physical_mode(self, capsys):
        code, out, _ = run(capsys, "eigs", "--atom", "Cs", "--qp", "1", "--qs", "1",
                           "--delta-hz", "1e9", "--mf", "0",
                           "--pump-field", "100", "--stokes-field", "100")
        assert code == 0
        _, rows = parse_csv(out)
        intermediates = [row for row in rows if row[2] == "intermediate"]
        assert len(intermediates) == 4  # F' = 2..5
        for row in intermediates:
            assert float(row[3]) == pytest.approx(-2 * math.pi * 1e9, rel=1e-12)
            assert abs(float(row[4])) <= float(row[5])


class TestConfigFile:
    def test_config_and_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# spectrum configuration\n"
            "atom = Cs\n"
            "line = D2\n"
            "qp = 1\n"
            "qs = 1\n"
            "pump_field_v_m = 100\n"
            "stokes_field_v_m = 150\n"
            "delta_hz = 1e9\n"
        )
        code, from_file, _ = run(capsys, "spectrum", "--config", str(cfg))
        assert code == 0
        assert from_file == (GOLDEN / "spectrum_cs_d2_pp.csv").read_text()
        # flag overrides the file value
        _, overridden, _ = run(capsys, "spectrum", "--config", str(cfg),
                               "--stokes-field", "100")
        assert overridden != from_file

    def test_unknown_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("atomm = Cs\n")
        code, _, err = run(capsys, "table", "--config", str(cfg))
        assert code == 1 and "unknown key" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "table", "--config", "/nonexistent.cfg")
        assert code == 1

    def test_bool_keys(self, capsys, tmp_path):
        cfg = tmp_path / "t.cfg"
        cfg.write_text("atom = Cs\nexact = yes\n")
        _, out, _ = run(capsys, "table", "--config", str(cfg))
        assert "sqrt(" in out


class TestOutputContract:
    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.csv"
        code, out, _ = run(capsys, "table", "--atom", "Cs",
                           "--output", str(target))
        assert code == 0 and out == ""
        assert target.read_text() == (GOLDEN / "table_cs_d2_pp_float.csv").read_text()

    def test_lf_line_endings(self, capsys):
        _, out, _ = run(capsys, "table", "--atom", "Cs")
        assert "\r" not in out

    def test_json_17_digit_round_trip(self, capsys):
        _, out, _ = run(capsys, "table", "--atom", "Cs", "--format", "json")
        data = json.loads(out)
        assert data[0]["gdot"] == math.sqrt(7) / 24
        # 17 significant digits appear literally in the serialization
        assert "0.11023963796102461" in out
