"""Main CLI entry point using Typer."""

import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..models.qubit import QubitSpec
from ..oracle import (
    OracleReporter,
    TruncationConvergenceError,
    compare_with_effective,
    dispersion_scan,
    write_scan_csv,
)
from ..physics.params import array_area_scale, array_params, derive_shared_scales
from ..physics.spectrum import (
    SpectrumConvergenceError,
    boundary_amplitude,
    charge_matrix_element,
    phase_matrix_element,
    solve_fluxonium_oscillator,
    solve_with_settings,
    write_wavefunctions,
)
from ..sweep import SweepError, SweepReporter, rule_of_thumb_band, survey, sweep_t2
from ..utils.export import detect_format, export_to_csv, export_to_json
from ..utils.logging import setup_logging
from ..utils.progress import create_spinner_progress
from .config import ENV_LOG_LEVEL, ConfigError, RunConfig

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_NOT_CONVERGED = 3

app = typer.Typer(
    name="fluxopt",
    help="Fluxonium array optimizer - charge-noise coherence versus array junction count",
    add_completion=False,
)

console = Console()

# Set by the callback
state: Dict[str, Any] = {"quiet": False}


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging"),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress output except errors"),
    log_file: Optional[str] = typer.Option(None, "--log-file", help="Write a DEBUG log to this file"),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colored output"),
):
    """Fluxonium array optimizer - charge-noise coherence versus array junction count."""
    state["quiet"] = quiet

    log_level = "ERROR" if quiet else ("DEBUG" if verbose else os.getenv(ENV_LOG_LEVEL, "INFO"))
    setup_logging(level=log_level, log_file=log_file, verbose=verbose)

    if no_color:
        console.no_color = True


def _exit_code(error: Exception) -> int:
    if isinstance(error, ConfigError):
        return EXIT_CONFIG_ERROR
    if isinstance(error, (SpectrumConvergenceError, TruncationConvergenceError)):
        return EXIT_NOT_CONVERGED
    if isinstance(error, SweepError) and isinstance(error.__cause__, SpectrumConvergenceError):
        return EXIT_NOT_CONVERGED
    return EXIT_FAILURE


def _fail(error: Exception, command: str) -> typer.Exit:
    """Print a diagnostic and return the Exit carrying the mapped exit code."""
    code = _exit_code(error)
    if code == EXIT_CONFIG_ERROR:
        console.print(f"[bold red]Configuration error:[/bold red] {error}")
    elif code == EXIT_NOT_CONVERGED:
        console.print(f"[bold red]Solver did not converge:[/bold red] {error}")
    else:
        console.print(f"[bold red]Error:[/bold red] {error}")
        logger.exception(f"Error in {command} command")
    return typer.Exit(code=code)


def _load_config(config_file: Path, overrides: Dict[str, Any]) -> RunConfig:
    """Load a config file and apply command-line overrides (None values are skipped)."""
    config = RunConfig.load(config_file)
    for key, value in overrides.items():
        if value is not None:
            config.set(key, value)
    config.validate()
    return config


def _print(*args: Any) -> None:
    if not state["quiet"]:
        console.print(*args)


def _resolve_output(config: RunConfig, output_format: Optional[str]) -> Optional[str]:
    """Output format: explicit flag, then file extension, then output.format."""
    if output_format is not None or config.output_path is None:
        return output_format or config.output_format
    if "output.format" in config.values:
        return config.output_format
    try:
        return detect_format(config.output_path)
    except ValueError:
        return config.output_format


@app.command()
def version():
    """Show version information."""
    import numpy
    import scipy

    from .. import __version__

    console.print(f"fluxonium-array-optimizer version {__version__}")
    console.print(f"Python {sys.version.split()[0]}")
    console.print(f"numpy {numpy.__version__}, scipy {scipy.__version__}")


@app.command()
def derive(
    config_file: Path = typer.Option(..., "--config", "-c", help="Run configuration file"),
    n_values: Optional[List[int]] = typer.Option(None, "--n", help="Junction counts to tabulate (repeatable)"),
    reference_n: Optional[int] = typer.Option(
        None, "--reference-n", help="Existing junction count; adds the junction-area rescaling column"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Export the table (.csv or .json)"),
):
    """Print the N-independent scales and per-N array junction parameters."""
    try:
        config = _load_config(config_file, {})
        spec = config.qubit_spec()
        try:
            scales = derive_shared_scales(spec)
        except ValueError as e:
            raise config.error("qubit.e_j_ghz", str(e)) from None
        band_low, band_high = rule_of_thumb_band(scales, spec)

        console.print(
            Panel(
                f"[bold]e²/2C^b:[/bold] {scales.e_cb:.4f} GHz\n"
                f"[bold]𝓔_C^a = N·E_C^a:[/bold] {scales.script_e_ca:.4f} GHz\n"
                f"[bold]E_L/𝓔_C^a:[/bold] {spec.e_l / scales.script_e_ca:.5f}\n"
                f"[bold]Rule-of-thumb band:[/bold] {band_low:.1f} – {band_high:.1f}",
                title="Derived Scales",
                style="cyan",
            )
        )

        table = Table(title="Array Junction Parameters", show_header=True, header_style="bold magenta")
        table.add_column("N", justify="right", style="cyan")
        table.add_column("E_J^a (GHz)", justify="right")
        table.add_column("E_C^a (GHz)", justify="right")
        table.add_column("E_J^a/E_C^a", justify="right", style="yellow")
        table.add_column("C^a/C^b", justify="right")
        if reference_n is not None:
            table.add_column(f"Area vs N={reference_n}", justify="right")

        rows = []
        for n in n_values or config.n_values:
            params = array_params(scales, spec, n)
            row = params.to_dict()
            cells = [
                str(n),
                f"{params.e_ja:.4f}",
                f"{params.e_ca:.4f}",
                f"{params.ratio:.2f}",
                f"{params.capacitance_ratio:.3f}",
            ]
            if reference_n is not None:
                scale = array_area_scale(n, reference_n)
                row["area_scale"] = scale
                cells.append(f"{scale:.3f}")
            table.add_row(*cells, style=None if params.exceeds_black_sheep else "dim")
            rows.append(row)

        console.print(table)

        if out is not None:
            if detect_format(out) == "json":
                path = export_to_json({"scales": scales.to_dict(), "qubit": spec.to_dict(), "array": rows}, out)
            else:
                path = export_to_csv(rows, out)
            console.print(f"[green]✓ Table exported to {path}[/green]")

    except typer.Exit:
        raise
    except Exception as e:
        raise _fail(e, "derive")


def _spectrum_report(spec: QubitSpec, config: RunConfig) -> Dict[str, Any]:
    settings = config.solver_settings()
    sol = solve_with_settings(spec, settings)
    oscillator = solve_fluxonium_oscillator(spec, n_levels=2)
    oscillator_f01 = float(oscillator[1] - oscillator[0])
    return {
        "solution": sol,
        "summary": {
            **sol.summary(),
            "qubit": spec.to_dict(),
            "charge_matrix_element": charge_matrix_element(sol),
            "phase_matrix_element": phase_matrix_element(sol),
            "boundary_amplitude": boundary_amplitude(sol),
            "oscillator_f01_GHz": oscillator_f01,
            "oscillator_relative_difference": abs(oscillator_f01 - sol.f01) / sol.f01,
        },
    }


@app.command()
def spectrum(
    config_file: Path = typer.Option(..., "--config", "-c", help="Run configuration file"),
    wavefunctions: Optional[Path] = typer.Option(
        None, "--wavefunctions", "-w", help="Dump (theta, psi_n) per level as <stem>_level<n><suffix>"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the summary as JSON"),
):
    """Solve the effective single-mode Hamiltonian and report its low-lying spectrum."""
    try:
        config = _load_config(config_file, {})
        spec = config.qubit_spec()
        report = _spectrum_report(spec, config)
        summary = report["summary"]

        console.print(
            Panel(
                f"[bold]E0:[/bold] {summary['E0_GHz']:.6f} GHz\n"
                f"[bold]E1:[/bold] {summary['E1_GHz']:.6f} GHz\n"
                f"[bold]f01:[/bold] {summary['f01_GHz']:.6f} GHz "
                f"[dim](oscillator basis {summary['oscillator_f01_GHz']:.6f} GHz)[/dim]\n"
                f"[bold]|<0|n|1>|:[/bold] {summary['charge_matrix_element']:.6f}\n"
                f"[bold]|<0|theta|1>|:[/bold] {summary['phase_matrix_element']:.6f}\n"
                f"[dim]Grid: {summary['grid']['points']} points, "
                f"theta_max {summary['grid']['theta_max']:.2f}, {summary['refinements']} refinement(s)[/dim]",
                title="Effective Spectrum",
                style="cyan",
            )
        )

        if wavefunctions is not None:
            written = write_wavefunctions(report["solution"], wavefunctions)
            console.print(f"[green]✓ Wrote {len(written)} wavefunction file(s) next to {wavefunctions}[/green]")

        if out is not None:
            path = export_to_json(summary, out)
            console.print(f"[green]✓ Spectrum summary exported to {path}[/green]")

    except typer.Exit:
        raise
    except Exception as e:
        raise _fail(e, "spectrum")


@app.command()
def sweep(
    config_file: Path = typer.Option(..., "--config", "-c", help="Run configuration file"),
    lam: Optional[str] = typer.Option(
        None, "--lambda", help="Broadening factor (number or harmonic/broadened/mathieu); overrides qubit.lambda"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output path; overrides output.path"),
    output_format: Optional[str] = typer.Option(None, "--format", "-f", help="Output format: csv or json"),
    n_min: Optional[int] = typer.Option(None, "--n-min", help="Smallest junction count"),
    n_max: Optional[int] = typer.Option(None, "--n-max", help="Largest junction count"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", help="Parallel workers for the sweep"),
    all_rows: bool = typer.Option(False, "--all", help="Display every row instead of a window around N_opt"),
):
    """Sweep the junction count and locate the T2 optimum."""
    try:
        config = _load_config(
            config_file,
            {
                "qubit.lambda": lam,
                "output.path": str(out) if out is not None else None,
                "output.format": output_format,
                "sweep.n_min": n_min,
                "sweep.n_max": n_max,
                "sweep.jobs": jobs,
            },
        )
        result = sweep_t2(
            config.qubit_spec(),
            config.noise_spec(),
            n_min=config.n_min,
            n_max=config.n_max,
            jobs=config.jobs,
            settings=config.solver_settings(),
            show_progress=not state["quiet"],
        )

        reporter = SweepReporter(console)
        if not state["quiet"]:
            reporter.display(result, window=None if all_rows else 10)

        if config.output_path is not None:
            if _resolve_output(config, output_format) == "json":
                reporter.export_json(result, config.output_path)
            else:
                reporter.export_csv(result, config.output_path)

    except typer.Exit:
        raise
    except Exception as e:
        raise _fail(e, "sweep")


@app.command()
def oracle(
    config_file: Path = typer.Option(..., "--config", "-c", help="Run configuration file"),
    n: Optional[int] = typer.Option(None, "--n", help="Junction count (overrides oracle.n)"),
    n_max: Optional[int] = typer.Option(
        None, "--n-max", help="Starting charge truncation, raised until converged (overrides oracle.n_max)"
    ),
    lam: Optional[str] = typer.Option(
        None, "--lambda", help="Broadening factor of the tight-binding comparison; overrides qubit.lambda"
    ),
    scan_points: Optional[int] = typer.Option(None, "--scan-points", help="Offset-charge scan points"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report as JSON"),
    scan_csv: Optional[Path] = typer.Option(None, "--scan-csv", help="Write the offset-charge scan as CSV"),
):
    """Compare the exact small-N circuit with the effective model."""
    try:
        config = _load_config(
            config_file,
            {"oracle.n": n, "oracle.n_max": n_max, "oracle.scan_points": scan_points, "qubit.lambda": lam},
        )
        model = config.oracle_model()
        with create_spinner_progress(disable=state["quiet"]) as progress:
            progress.add_task(f"Diagonalizing the N={model.n} circuit from n_max={model.n_max}...", total=None)
            report = compare_with_effective(
                model,
                scan_points=config.scan_points,
                settings=config.solver_settings(),
                lam=config.oracle_lambda,
            )

        reporter = OracleReporter(console)
        if not state["quiet"]:
            reporter.display(report)

        target = out or (Path(config.output_path) if config.output_path else None)
        if target is not None:
            reporter.export_json(report, target)

        if scan_csv is not None:
            converged = model.with_truncation(report["model"]["n_max"])
            path = write_scan_csv(dispersion_scan(converged, points=config.scan_points), scan_csv)
            _print(f"[green]✓ Dispersion scan exported to {path}[/green]")

    except typer.Exit:
        raise
    except Exception as e:
        raise _fail(e, "oracle")


@app.command(name="survey")
def survey_command(
    config_files: List[Path] = typer.Option(..., "--config", "-c", help="Device configuration (repeat per device)"),
    lam: Optional[str] = typer.Option(None, "--lambda", help="Broadening factor applied to every device"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Export the survey table"),
    output_format: Optional[str] = typer.Option(None, "--format", "-f", help="Output format: csv or json"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", help="Parallel workers per sweep"),
):
    """Locate the optimum of several devices and compare with the rule-of-thumb band."""
    try:
        configs = [_load_config(path, {"qubit.lambda": lam, "sweep.jobs": jobs}) for path in config_files]
        devices = [(Path(c.path or "").stem, c.qubit_spec()) for c in configs]

        noise = configs[0].noise_spec()
        for path, config in zip(config_files[1:], configs[1:]):
            if config.noise_spec() != noise:
                logger.warning(f"Noise section of {path} differs from {config_files[0]}; using the first")

        entries = survey(devices, noise, jobs=configs[0].jobs, settings=configs[0].solver_settings())

        reporter = SweepReporter(console)
        if not state["quiet"]:
            reporter.display_survey(entries)

        if out is not None:
            fmt = output_format or detect_format(out)
            if fmt not in ("csv", "json"):
                raise ConfigError(f"expected csv or json, got {fmt!r}", path="<command line>", key="--format")
            reporter.export_survey(entries, out, output_format=fmt)

    except typer.Exit:
        raise
    except Exception as e:
        raise _fail(e, "survey")


def cli_main():
    """Entry point for console script."""
    app()


if __name__ == "__main__":
    cli_main()
