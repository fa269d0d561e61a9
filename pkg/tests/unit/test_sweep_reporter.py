"""Unit tests for SweepReporter display and export."""

import json
import math

import pytest
from rich.console import Console

from src.models.coherence import CoherenceRecord
from src.models.sweep import SurveyEntry, SweepResult
from src.sweep.reporter import SweepReporter


def make_record(n: int, t_two: float) -> CoherenceRecord:
    return CoherenceRecord(
        n=n, t_phi=2 * t_two, t_one=t_two, t_two=t_two, f01=0.2, ratio_ja_ca=n**2 / 10, eps0=1e-6, eps1=-2e-6
    )


@pytest.fixture
def result():
    records = [make_record(n, 100.0 + 10 * n - (n - 12) ** 2) for n in range(2, 30)]
    best = max(records, key=lambda r: r.t_two)
    return SweepResult(
        records=records,
        n_opt=best.n,
        t2_opt=best.t_two,
        band_low=8.8,
        band_high=17.6,
        el_over_script_eca=0.32,
        parameters={"qubit": {"e_c_ghz": 0.55}},
    )


@pytest.fixture
def console():
    return Console(record=True, width=140)


class TestDisplay:
    """Tests for the sweep summary display."""

    def test_summary_panel(self, result, console):
        """The optimum and the band are shown."""
        SweepReporter(console=console).display(result)
        output = console.export_text()
        assert f"N = {result.n_opt}" in output
        assert "Rule-of-thumb band" in output
        assert "optimum outside" not in output

    def test_window_limits_rows(self, result, console):
        """Only rows within the window of n_opt are tabulated."""
        SweepReporter(console=console).display(result, window=2)
        assert "Showing 5 of 28 rows" in console.export_text()

    def test_out_of_band_flagged(self, result, console):
        """An optimum outside the band is called out."""
        shifted = SweepResult(
            records=result.records,
            n_opt=result.n_opt,
            t2_opt=result.t2_opt,
            band_low=50.0,
            band_high=100.0,
            el_over_script_eca=0.01,
        )
        SweepReporter(console=console).display(shifted, window=None)
        assert "optimum outside" in console.export_text()


class TestExport:
    """Tests for sweep export."""

    def test_export_csv_with_summary(self, result, console, tmp_path):
        """CSV rows plus a JSON summary alongside."""
        csv_path, summary_path = SweepReporter(console=console).export_csv(result, tmp_path / "sweep.csv")
        lines = csv_path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "N,T_phi_us,T1_us,T2_us,f01_GHz,EJa_over_ECa,eps0_GHz,eps1_GHz"
        assert len(lines) == 1 + len(result.records)
        assert summary_path == tmp_path / "sweep_summary.json"
        assert json.loads(summary_path.read_text(encoding="utf-8"))["n_opt"] == result.n_opt

    def test_export_csv_to_json_named_path(self, result, console, tmp_path):
        """A .json target still holds the CSV rows; the summary goes to its own file."""
        csv_path, summary_path = SweepReporter(console=console).export_csv(result, tmp_path / "sweep.json")
        assert csv_path != summary_path
        assert csv_path.read_text(encoding="utf-8").startswith("N,T_phi_us,")
        assert json.loads(summary_path.read_text(encoding="utf-8"))["n_opt"] == result.n_opt

    def test_export_json(self, result, console, tmp_path):
        """One document with summary and records."""
        (path,) = SweepReporter(console=console).export_json(result, tmp_path / "sweep.json")
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["summary"]["in_band"] is True
        assert len(data["records"]) == len(result.records)

    def test_infinite_times_exported(self, console, tmp_path):
        """Vanishing rates are written as inf."""
        record = CoherenceRecord(
            n=3, t_phi=math.inf, t_one=math.inf, t_two=math.inf, f01=0.2, ratio_ja_ca=1.0, eps0=0.0, eps1=0.0
        )
        result = SweepResult(
            records=[record], n_opt=3, t2_opt=math.inf, band_low=1.0, band_high=5.0, el_over_script_eca=1.0
        )
        csv_path, _ = SweepReporter(console=console).export_csv(result, tmp_path / "inf.csv")
        assert csv_path.read_text(encoding="utf-8").splitlines()[1].startswith("3,inf,inf,inf,")


class TestSurvey:
    """Tests for survey display and export."""

    @pytest.fixture
    def entries(self):
        return [
            SurveyEntry("a", 0.011, 68, 900.0, 46.9, 93.8, lam=1.0),
            SurveyEntry("b", 0.32, 18, 2000.0, 8.8, 17.6, lam=None),
        ]

    def test_display(self, entries, console):
        """Each device appears with its band verdict."""
        SweepReporter(console=console).display_survey(entries)
        output = console.export_text()
        assert "Rule-of-Thumb Survey" in output
        assert "✓" in output
        assert "✗" in output

    @pytest.mark.parametrize("output_format", ["csv", "json"])
    def test_export(self, entries, console, tmp_path, output_format):
        """Survey rows export in either format."""
        path = SweepReporter(console=console).export_survey(
            entries, tmp_path / f"survey.{output_format}", output_format
        )
        text = path.read_text(encoding="utf-8")
        if output_format == "csv":
            assert text.splitlines()[0].startswith("device,EL_over_script_ECa,lambda,n_opt")
            assert text.splitlines()[2].endswith(",false")
        else:
            assert [d["device"] for d in json.loads(text)["devices"]] == ["a", "b"]
