"""Sweep result formatting, display and export."""

from __future__ import annotations

import math
from pathlib import Path
from typing import List, Optional, Union

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..models.coherence import CoherenceRecord
from ..models.sweep import SurveyEntry, SweepResult
from ..utils.export import export_to_csv, export_to_json


def _format_time(value: float) -> str:
    if math.isinf(value):
        return "∞"
    if value >= 1e4:
        return f"{value / 1e3:,.1f} ms"
    return f"{value:,.1f} µs"


class SweepReporter:
    """Format, display and export junction-count sweeps."""

    def __init__(self, console: Optional[Console] = None):
        """Initialize sweep reporter.

        Args:
            console: Rich console instance (creates new one if not provided)
        """
        self.console = console or Console()

    def display(self, result: SweepResult, window: Optional[int] = 10) -> None:
        """Display the optimum and the records around it.

        Args:
            result: SweepResult to display
            window: Rows shown either side of n_opt (all rows when None)
        """
        self.console.print()
        band_style = "green" if result.in_band else "yellow"
        self.console.print(
            Panel(
                f"[bold]Optimal junction count: N = {result.n_opt}[/bold]\n"
                f"T2 at optimum: {_format_time(result.t2_opt)}\n"
                f"E_J^a/E_C^a at optimum: {result.ratio_at_opt:.1f}\n"
                f"Rule-of-thumb band: [{band_style}]{result.band_low:.1f} – {result.band_high:.1f}"
                f"{'' if result.in_band else ' (optimum outside)'}[/{band_style}]",
                title="Sweep Summary",
                style="cyan",
            )
        )

        records = result.records
        if window is not None:
            records = [r for r in records if abs(r.n - result.n_opt) <= window]

        self.console.print(self._records_table(records, result.n_opt))
        if len(records) < len(result.records):
            self.console.print(
                f"[dim]Showing {len(records)} of {len(result.records)} rows "
                f"(N = {result.records[0].n}..{result.records[-1].n})[/dim]"
            )
        self.console.print()

    def _records_table(self, records: List[CoherenceRecord], n_opt: int) -> Table:
        table = Table(title="Coherence vs Junction Count", show_header=True, header_style="bold magenta")
        table.add_column("N", justify="right", style="cyan")
        table.add_column("T_phi", justify="right")
        table.add_column("T1", justify="right")
        table.add_column("T2", justify="right", style="yellow")
        table.add_column("f01 (GHz)", justify="right")
        table.add_column("E_J^a/E_C^a", justify="right")
        table.add_column("|eps1 - eps0| (GHz)", justify="right", style="dim")

        for record in records:
            table.add_row(
                str(record.n),
                _format_time(record.t_phi),
                _format_time(record.t_one),
                _format_time(record.t_two),
                f"{record.f01:.4f}",
                f"{record.ratio_ja_ca:.1f}",
                f"{record.eps_diff:.3e}",
                style="bold green" if record.n == n_opt else None,
            )
        return table

    def export_csv(self, result: SweepResult, filepath: Union[str, Path]) -> List[Path]:
        """Write the records as CSV and the summary as <stem>_summary.json next to it.

        Returns:
            [csv path, summary json path]
        """
        path = Path(filepath)
        csv_path = export_to_csv([r.to_row() for r in result.records], path)
        summary_path = export_to_json(result.summary(), path.with_name(f"{path.stem}_summary.json"))
        self.console.print(f"[green]✓ Sweep exported to {csv_path} (summary: {summary_path})[/green]")
        return [csv_path, summary_path]

    def export_json(self, result: SweepResult, filepath: Union[str, Path]) -> List[Path]:
        """Write summary and records as one JSON document."""
        path = export_to_json(
            {"summary": result.summary(), "records": [r.to_row() for r in result.records]},
            filepath,
        )
        self.console.print(f"[green]✓ Sweep exported to {path}[/green]")
        return [path]

    def display_survey(self, entries: List[SurveyEntry]) -> None:
        """Display the optimum of several devices against the rule-of-thumb band."""
        table = Table(title="Rule-of-Thumb Survey", show_header=True, header_style="bold magenta")
        table.add_column("Device", style="cyan")
        table.add_column("E_L/𝓔_C^a", justify="right")
        table.add_column("lambda", justify="right")
        table.add_column("N_opt", justify="right", style="yellow")
        table.add_column("Band", justify="right")
        table.add_column("T2 at N_opt", justify="right")
        table.add_column("In band", justify="center")

        for entry in entries:
            table.add_row(
                entry.label,
                f"{entry.el_over_script_eca:.4g}",
                f"{entry.lam:.4f}" if entry.lam is not None else "-",
                str(entry.n_opt),
                f"{entry.band_low:.1f} – {entry.band_high:.1f}",
                _format_time(entry.t2_opt),
                "[green]✓[/green]" if entry.in_band else "[red]✗[/red]",
            )

        self.console.print()
        self.console.print(table)
        self.console.print()

    def export_survey(self, entries: List[SurveyEntry], filepath: Union[str, Path], output_format: str = "csv") -> Path:
        """Write the survey table as CSV or JSON."""
        rows = [entry.to_row() for entry in entries]
        if output_format == "json":
            path = export_to_json({"devices": rows}, filepath)
        else:
            path = export_to_csv(rows, filepath)
        self.console.print(f"[green]✓ Survey exported to {path}[/green]")
        return path
