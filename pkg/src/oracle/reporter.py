"""Oracle comparison display and export."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Dict, Optional, Union

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..utils.export import export_to_json

F01_TOLERANCE = 0.05


def _ratio_text(value: float) -> str:
    if math.isinf(value):
        return "∞"
    style = "green" if 0.5 <= value <= 2.0 else "yellow"
    return f"[{style}]{value:.3f}[/{style}]"


class OracleReporter:
    """Display and export exact-versus-effective comparisons."""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()

    def display(self, report: Dict[str, Any]) -> None:
        """Display an oracle report from compare_with_effective."""
        model = report["model"]
        f01_ok = report["f01_relative_error"] <= F01_TOLERANCE
        status = "[green]✓ within 5%[/green]" if f01_ok else "[red]✗ outside 5%[/red]"
        tried = report.get("truncations")
        settled = f", settled over n_max {tried}" if tried else ""

        self.console.print()
        self.console.print(
            Panel(
                f"[bold]Full-circuit oracle, N = {model['N']}[/bold]\n"
                f"Charge truncation: ±{model['n_max']} (dimension {model['dimension']}{settled})\n"
                f"f01 exact: {report['f01_exact_GHz']:.6f} GHz\n"
                f"f01 effective: {report['f01_effective_GHz']:.6f} GHz\n"
                f"Relative difference: {report['f01_relative_error']:.3%} {status}",
                style="cyan",
            )
        )

        table = Table(title="Charge Dispersion", show_header=True, header_style="bold magenta")
        table.add_column("Level", justify="center", style="cyan")
        table.add_column("Exact fit (GHz)", justify="right")
        table.add_column("Tight binding (GHz)", justify="right")
        table.add_column("Ratio", justify="right")
        table.add_column("Cosine R²", justify="right")

        for level in (0, 1):
            table.add_row(
                str(level),
                f"{report[f'eps{level}_fit_GHz']:.4e}",
                f"{report[f'eps{level}_tight_binding_GHz']:.4e}",
                _ratio_text(report[f"eps{level}_ratio"]),
                f"{report[f'eps{level}_r_squared']:.6f}",
            )

        self.console.print(table)
        self.console.print()

    def export_json(self, report: Dict[str, Any], filepath: Union[str, Path]) -> Path:
        """Write the oracle report as JSON."""
        path = export_to_json(report, filepath)
        self.console.print(f"[green]✓ Oracle report exported to {path}[/green]")
        return path
