"""
Unit tests for the command-line interface.
"""
import json
from pathlib import Path

import pytest

from boltscan.app.cli import build_parser, run
from boltscan.core.signal_core import snr_db
from boltscan.core.synthesis import gen_piecewise
from boltscan.utils.signal_io import read_json, read_signal_csv, read_spectrum_csv
from tests.fixtures.signals import TWO_TONE_SPEC


def _error(capsys) -> dict:
    lines = capsys.readouterr().err.strip().splitlines()
    return json.loads(lines[-1])


def _simulate(out: Path, *extra: str) -> Path:
    assert run(["simulate", "--output-dir", str(out), "--no-plots", *extra]) == 0
    return out / "signal.csv"


@pytest.fixture
def two_tone_csv(tmp_path) -> Path:
    """Clean two-tone record written by the simulate subcommand."""
    return _simulate(tmp_path / "sim", "--preset", "eq10")


@pytest.fixture
def bolt_csv(tmp_path) -> Path:
    """Clean bolt record written by the simulate subcommand."""
    return _simulate(tmp_path / "bolt", "--preset", "bolt")


class TestParser:
    """Tests for argument parsing."""

    def test_subcommands(self):
        """Test that every subcommand is registered."""
        parser = build_parser()
        for argv in (
            ["simulate", "--preset", "eq10"],
            ["decompose", "x.csv"],
            ["mf-decompose", "x.csv"],
            ["spectrum", "x.csv"],
            ["analyze", "x.csv"],
            ["reproduce"],
        ):
            assert parser.parse_args(argv).subcommand == argv[0]

    def test_default_modes_per_subcommand(self):
        """Test the subcommand-specific default K."""
        parser = build_parser()

        assert parser.parse_args(["decompose", "x.csv"]).modes == 2
        assert parser.parse_args(["mf-decompose", "x.csv"]).modes == 5
        assert parser.parse_args(["analyze", "x.csv"]).modes == 3

    def test_unknown_subcommand(self):
        """Test exit code 2 on usage errors."""
        assert run(["frobnicate"]) == 2

    def test_missing_subcommand(self):
        """Test that a subcommand is required."""
        assert run([]) == 2

    def test_missing_required_option(self):
        """Test that simulate requires a preset."""
        assert run(["simulate"]) == 2

    def test_help(self, capsys):
        """Test that --help exits cleanly."""
        assert run(["--help"]) == 0
        assert "simulate" in capsys.readouterr().out


class TestSimulate:
    """Tests for the simulate subcommand."""

    def test_two_tone_preset(self, tmp_path):
        """Test the 2000-sample record at 1 MHz and its provenance."""
        out = tmp_path / "out"
        signal_path = _simulate(out, "--preset", "eq10")

        s = read_signal_csv(signal_path)
        assert len(s) == 2000
        assert s.dt == pytest.approx(1e-6)

        provenance = read_json(out / "provenance.json")
        assert provenance["schema"] == 1
        assert provenance["tool"] == "boltscan"
        assert provenance["subcommand"] == "simulate"
        assert provenance["argv"][0] == "simulate"
        assert provenance["artifacts"] == ["provenance.json", "signal.csv"]

    def test_noisy_preset(self, tmp_path):
        """Test the default 5 dB noise and its recorded seed."""
        out = tmp_path / "out"
        s = read_signal_csv(_simulate(out, "--preset", "eq10-noisy", "--seed", "7"))

        assert snr_db(gen_piecewise(TWO_TONE_SPEC), s) == pytest.approx(5.0, abs=1e-6)
        assert read_json(out / "provenance.json")["seeds"] == {"noise": 7}

    def test_bolt_preset_overrides(self, tmp_path):
        """Test geometry overrides of the bolt preset."""
        s = read_signal_csv(
            _simulate(tmp_path / "out", "--preset", "bolt", "--record-length", "2e-3")
        )

        assert len(s) == 500
        assert s.dt == pytest.approx(4e-6)

    def test_bolt_options_rejected_for_tones(self, tmp_path, capsys):
        """Test that bolt geometry does not apply to the two-tone preset."""
        code = run(
            ["simulate", "--preset", "eq10", "--bolt-length", "2", "--output-dir", str(tmp_path)]
        )

        assert code == 1
        assert _error(capsys)["error"] == "E_CONFIG"

    def test_plot_written(self, tmp_path):
        """Test that the waveform figure is emitted unless disabled."""
        out = tmp_path / "out"
        assert run(["simulate", "--preset", "eq10", "--output-dir", str(out)]) == 0

        assert (out / "signal.svg").read_text().lstrip().startswith("<?xml")

    def test_output_dir_from_environment(self, tmp_path, monkeypatch):
        """Test that BOLTSCAN_OUTPUT_DIR is used without --output-dir."""
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("BOLTSCAN_OUTPUT_DIR", str(tmp_path / "env-out"))

        assert run(["simulate", "--preset", "eq10", "--no-plots"]) == 0
        assert (tmp_path / "env-out" / "signal.csv").is_file()


class TestDecompose:
    """Tests for the decompose and mf-decompose subcommands."""

    def test_decompose(self, two_tone_csv, tmp_path):
        """Test mode, residual and summary artifacts."""
        out = tmp_path / "dec"
        code = run(
            ["decompose", str(two_tone_csv), "--modes", "2", "--output-dir", str(out), "--no-plots"]
        )

        assert code == 0
        assert len(read_signal_csv(out / "mode_0.csv")) == 2000
        assert (out / "mode_1.csv").is_file()
        assert (out / "residual.csv").is_file()
        summary = read_json(out / "summary.json")
        assert summary["omegas_hz"] == sorted(summary["omegas_hz"])
        assert summary["omegas_hz"][0] == pytest.approx(10e3, rel=0.05)
        assert summary["omegas_hz"][1] == pytest.approx(20e3, rel=0.05)
        assert read_json(out / "provenance.json")["config"]["vmd"]["K"] == 2

    def test_mf_decompose_fixed_width(self, two_tone_csv, tmp_path):
        """Test that the SE width reaches the summary."""
        out = tmp_path / "mf"
        code = run(
            [
                "mf-decompose",
                str(two_tone_csv),
                "--se-width",
                "3",
                "--modes",
                "2",
                "--max-iters",
                "50",
                "--output-dir",
                str(out),
            ]
        )

        assert code == 0
        assert read_json(out / "summary.json")["diagnostics"]["se_width"] == 3
        assert (out / "modes.svg").is_file()

    def test_missing_input(self, tmp_path, capsys):
        """Test the missing-file error line."""
        code = run(["decompose", str(tmp_path / "absent.csv"), "--output-dir", str(tmp_path / "o")])

        assert code == 1
        error = _error(capsys)
        assert error["error"] == "E_FILE_NOT_FOUND"
        assert "absent.csv" in error["message"]

    def test_malformed_input(self, tmp_path, capsys):
        """Test the malformed-CSV error line."""
        bad = tmp_path / "bad.csv"
        bad.write_text("not a signal\n")

        assert run(["decompose", str(bad), "--output-dir", str(tmp_path / "o")]) == 1
        assert _error(capsys)["error"] == "E_CSV"

    def test_invalid_configuration(self, two_tone_csv, tmp_path, capsys):
        """Test that out-of-range solver settings are rejected."""
        code = run(["decompose", str(two_tone_csv), "--modes", "0", "--output-dir", str(tmp_path)])

        assert code == 1
        assert _error(capsys)["error"] == "E_CONFIG"

    def test_input_would_be_overwritten(self, two_tone_csv, capsys):
        """Test that an artifact may not replace the input."""
        target = two_tone_csv.parent / "residual.csv"
        target.write_text(two_tone_csv.read_text())

        code = run(["decompose", str(target), "--output-dir", str(two_tone_csv.parent)])

        assert code == 1
        assert _error(capsys)["error"] == "E_CONFIG"


class TestSpectrum:
    """Tests for the spectrum subcommand."""

    def test_spectrum_with_transitions(self, two_tone_csv, tmp_path):
        """Test spectrum tables, ridges and regime changes."""
        out = tmp_path / "spec"
        code = run(
            [
                "spectrum",
                str(two_tone_csv),
                "--split-hz",
                "15000",
                "--output-dir",
                str(out),
            ]
        )

        assert code == 0
        frame = read_spectrum_csv(out / "spectrum_mode_0.csv")
        assert len(frame) == 2000
        payload = read_json(out / "spectrum.json")
        assert len(payload["omegas_hz"]) == 2
        assert payload["transitions_s"] == pytest.approx([0.8e-3, 1.2e-3], abs=10e-6)
        assert len(payload["gap_samples"]) == 2
        assert (out / "spectrum.svg").is_file()


class TestAnalyze:
    """Tests for the analyze subcommand."""

    def test_bolt_length(self, bolt_csv, tmp_path):
        """Test the 3 m estimate on the clean bolt record."""
        out = tmp_path / "an"

        assert run(["analyze", str(bolt_csv), "--output-dir", str(out)]) == 0
        report = read_json(out / "report.json")
        assert report["estimated_length"] == pytest.approx(3.0, rel=0.05)
        assert report["echo_time"] == pytest.approx(1e-3, abs=5 * 4e-6)
        assert (out / "analysis.svg").is_file()

    def test_no_echo(self, tmp_path, capsys):
        """Test the error line for a record without a reflection."""
        silent = _simulate(tmp_path / "silent", "--preset", "bolt", "--echo-amplitude", "0")
        code = run(
            ["analyze", str(silent), "--se-width", "3", "--output-dir", str(tmp_path / "o")]
        )

        assert code == 1
        assert _error(capsys)["error"] == "E_NO_ECHO"


class TestReproduce:
    """Tests for the reproduce subcommand."""

    def test_snr_calibration(self, tmp_path):
        """Test a single fast experiment and its report."""
        out = tmp_path / "rep"
        code = run(
            [
                "reproduce",
                "--experiment",
                "snr_calibration",
                "--seeds",
                "3",
                "--output-dir",
                str(out),
            ]
        )

        assert code == 0
        report = read_json(out / "reproduction.json")
        assert report["schema"] == 1
        assert [e["name"] for e in report["experiments"]] == ["snr_calibration"]
        assert report["experiments"][0]["passed"] is True

    def test_unknown_experiment(self, tmp_path):
        """Test that experiment names are validated by the parser."""
        assert run(["reproduce", "--experiment", "nope", "--output-dir", str(tmp_path)]) == 2

    def test_invalid_seed_count(self, tmp_path, capsys):
        """Test that the seed count must be positive."""
        assert run(["reproduce", "--seeds", "0", "--output-dir", str(tmp_path)]) == 1
        assert _error(capsys)["error"] == "E_CONFIG"
