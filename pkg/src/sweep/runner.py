"""Junction-count sweep: coherence records over N and the T2 optimum."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

from ..models.coherence import CoherenceRecord
from ..models.noise import NoiseSpec
from ..models.qubit import DerivedScales, QubitSpec
from ..models.spectrum import EigenSolution, SolverSettings
from ..models.sweep import SurveyEntry, SweepResult
from ..physics.coherence import coherence_record
from ..physics.params import array_params, derive_shared_scales
from ..physics.spectrum import charge_matrix_element, solve_with_settings
from ..physics.tightbinding import dispersion_amplitudes
from ..utils.progress import create_progress

logger = logging.getLogger(__name__)

DEFAULT_N_MIN = 2
MIN_DEFAULT_N_MAX = 120
BAND_MULTIPLE_FOR_N_MAX = 4


class SweepError(Exception):
    """Raised when the coherence computation fails at one junction count."""

    def __init__(self, n: int, message: str):
        self.n = n
        super().__init__(f"N={n}: {message}")


def rule_of_thumb_band(scales: DerivedScales, spec: QubitSpec) -> Tuple[float, float]:
    """Rule-of-thumb bounds (5, 10)/sqrt(E_L/script_e_ca) on the optimal junction count."""
    root = math.sqrt(spec.e_l / scales.script_e_ca)
    return 5.0 / root, 10.0 / root


def default_range(band_high: float) -> Tuple[int, int]:
    """Default sweep range [2, max(4*band_high, 120)], wide enough to bracket the optimum."""
    return DEFAULT_N_MIN, max(math.ceil(BAND_MULTIPLE_FOR_N_MAX * band_high), MIN_DEFAULT_N_MAX)


def sweep_t2(
    spec: QubitSpec,
    noise: NoiseSpec,
    n_min: Optional[int] = None,
    n_max: Optional[int] = None,
    jobs: int = 1,
    settings: Optional[SolverSettings] = None,
    show_progress: bool = False,
) -> SweepResult:
    """Compute coherence times over a range of junction counts and locate the T2 optimum.

    The effective Hamiltonian does not depend on N at fixed E_C, E_J, E_L, so it is solved
    once; only the dispersion amplitudes and island factors vary across the sweep.

    Args:
        spec: Target qubit parameters
        noise: Charge-noise amplitudes
        n_min: Smallest junction count (default 2)
        n_max: Largest junction count (default max(4*band_high, 120))
        jobs: Worker threads for the per-N map
        settings: Solver controls
        show_progress: Display a Rich progress bar

    Returns:
        SweepResult with one record per N, ordered by N

    Raises:
        SpectrumConvergenceError: If the eigensolve does not converge
        SweepError: If the computation fails at a particular N
    """
    settings = settings or SolverSettings()
    if not math.isclose(noise.cd_ratio, spec.cd_ratio, rel_tol=0, abs_tol=1e-15):
        logger.warning(
            f"Noise cd_ratio {noise.cd_ratio} differs from qubit cd_ratio {spec.cd_ratio}; using the qubit value"
        )
        noise = replace(noise, cd_ratio=spec.cd_ratio)

    scales = derive_shared_scales(spec)
    band_low, band_high = rule_of_thumb_band(scales, spec)

    default_min, default_max = default_range(band_high)
    n_min = default_min if n_min is None else n_min
    n_max = default_max if n_max is None else n_max
    if n_min < 1 or n_max < n_min:
        raise ValueError(f"Sweep range must satisfy 1 <= n_min <= n_max, got [{n_min}, {n_max}]")
    if jobs < 1:
        raise ValueError(f"jobs must be at least 1, got {jobs}")

    logger.debug(f"Sweeping N in [{n_min}, {n_max}] with {jobs} worker(s)")
    sol = solve_with_settings(spec, settings)
    matelem = charge_matrix_element(sol)

    n_values = list(range(n_min, n_max + 1))
    records = _compute_records(spec, scales, sol, matelem, noise, n_values, jobs, show_progress)

    best = records[0]
    for record in records[1:]:
        if record.t_two > best.t_two:
            best = record

    el_over_script_eca = spec.e_l / scales.script_e_ca
    logger.info(f"Sweep complete: n_opt={best.n}, T2={best.t_two:.1f} us over N in [{n_min}, {n_max}]")

    return SweepResult(
        records=records,
        n_opt=best.n,
        t2_opt=best.t_two,
        band_low=band_low,
        band_high=band_high,
        el_over_script_eca=el_over_script_eca,
        parameters={
            "qubit": spec.to_dict(),
            "noise": noise.to_dict(),
            "scales": scales.to_dict(),
            "solver": settings.to_dict(),
            "f01_GHz": sol.f01,
            "charge_matrix_element": matelem,
        },
    )


def _compute_records(
    spec: QubitSpec,
    scales: DerivedScales,
    sol: EigenSolution,
    matelem: float,
    noise: NoiseSpec,
    n_values: List[int],
    jobs: int,
    show_progress: bool,
) -> List[CoherenceRecord]:
    """Evaluate every N, in parallel when jobs > 1, and return records ordered by N."""

    def compute(n: int) -> CoherenceRecord:
        try:
            eps = dispersion_amplitudes(spec, sol, scales, n)
            return coherence_record(spec, sol, matelem, eps, array_params(scales, spec, n), noise)
        except Exception as e:
            raise SweepError(n, str(e)) from e

    results: Dict[int, CoherenceRecord] = {}

    with create_progress(disable=not show_progress) as progress:
        task = progress.add_task(f"[bold]Sweeping {len(n_values)} junction counts...", total=len(n_values))

        if jobs == 1:
            for n in n_values:
                results[n] = compute(n)
                progress.advance(task)
        else:
            with ThreadPoolExecutor(max_workers=jobs) as executor:
                future_to_n = {executor.submit(compute, n): n for n in n_values}
                for future in as_completed(future_to_n):
                    record = future.result()
                    results[future_to_n[future]] = record
                    progress.advance(task)

    return [results[n] for n in n_values]


def survey(
    devices: Sequence[Tuple[str, QubitSpec]],
    noise: NoiseSpec,
    jobs: int = 1,
    settings: Optional[SolverSettings] = None,
) -> List[SurveyEntry]:
    """Locate the optimum of several devices for a rule-of-thumb comparison.

    Args:
        devices: (label, spec) pairs
        noise: Charge-noise amplitudes shared by every device
        jobs: Worker threads per sweep
        settings: Solver controls

    Returns:
        One SurveyEntry per device, in input order
    """
    entries = []
    for label, spec in devices:
        result = sweep_t2(spec, noise, jobs=jobs, settings=settings)
        entries.append(
            SurveyEntry(
                label=label,
                el_over_script_eca=result.el_over_script_eca,
                n_opt=result.n_opt,
                t2_opt=result.t2_opt,
                band_low=result.band_low,
                band_high=result.band_high,
                lam=spec.lam,
            )
        )
        logger.debug(f"Survey {label}: n_opt={result.n_opt}, in_band={entries[-1].in_band}")
    return entries
