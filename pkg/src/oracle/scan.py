"""Offset-charge scans of the exact spectrum and comparison with the effective model."""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import lstsq

from ..models.circuit import ConvergedScan, CosineFit, DispersionScan, FullCircuitModel
from ..models.spectrum import SolverSettings
from ..physics.spectrum import solve_with_settings
from ..physics.tightbinding import dispersion_amplitudes
from ..utils.export import export_to_csv
from .circuit import MAX_ORACLE_CHARGE, CircuitDimensionError, effective_spec, exact_levels

logger = logging.getLogger(__name__)

DEFAULT_SCAN_POINTS = 41
TRUNCATION_STEP = 2
DEFAULT_TRUNCATION_RTOL = 1e-2
# GHz; fitted amplitudes below this are indistinguishable from eigenvalue round-off
TRUNCATION_ATOL = 1e-11


class TruncationConvergenceError(Exception):
    """Raised when fitted dispersion amplitudes still move at the largest charge truncation."""

    def __init__(self, message: str, truncations: Sequence[int]):
        self.truncations = list(truncations)
        super().__init__(message)


def dispersion_scan(
    model: FullCircuitModel,
    island: int = 1,
    charges: Optional[Sequence[float]] = None,
    points: int = DEFAULT_SCAN_POINTS,
) -> DispersionScan:
    """Exact E0 and E1 while one island offset Q_j sweeps a charge path.

    Args:
        model: Full-circuit model; its other offsets are held fixed
        island: Index j of the scanned offset (1..N)
        charges: Q_j values in units of e (default: points values over [0, 2])
        points: Number of default path points

    Returns:
        DispersionScan
    """
    if not 1 <= island <= model.n:
        raise ValueError(f"island must lie in 1..{model.n}, got {island}")
    path = np.linspace(0.0, 2.0, points) if charges is None else np.asarray(charges, dtype=float)

    e0, e1 = [], []
    for q in path:
        offsets = np.array(model.charge_offsets, dtype=float)
        offsets[island] = q
        levels = exact_levels(model.with_offsets(offsets), n_levels=2)
        e0.append(float(levels[0]))
        e1.append(float(levels[1]))

    logger.debug(f"Scanned Q_{island} over {len(path)} points (N={model.n}, n_max={model.n_max})")
    return DispersionScan(island=island, charges=[float(q) for q in path], e0=e0, e1=e1)


def fit_cosine(charges: Sequence[float], energies: Sequence[float]) -> CosineFit:
    """Least-squares fit of E(Q) = offset - (eps/2) cos(pi Q).

    Returns:
        CosineFit with the signed amplitude eps and the coefficient of determination
    """
    q = np.asarray(charges, dtype=float)
    e = np.asarray(energies, dtype=float)
    if len(q) != len(e) or len(q) < 3:
        raise ValueError("Cosine fit needs at least 3 matching (charge, energy) points")

    design = np.column_stack([np.ones_like(q), -0.5 * np.cos(math.pi * q)])
    coefficients, _, _, _ = lstsq(design, e)
    offset, eps = float(coefficients[0]), float(coefficients[1])

    residual = e - design @ coefficients
    total = float(np.sum((e - e.mean()) ** 2))
    r_squared = 1.0 if total == 0 else 1.0 - float(np.sum(residual**2)) / total

    return CosineFit(eps=eps, offset=offset, r_squared=r_squared, peak_to_peak=float(e.max() - e.min()))


def _settled(new: CosineFit, old: CosineFit, rtol: float) -> bool:
    return abs(new.eps - old.eps) <= rtol * abs(new.eps) + TRUNCATION_ATOL


def converged_scan(
    model: FullCircuitModel,
    island: int = 1,
    points: int = DEFAULT_SCAN_POINTS,
    rtol: float = DEFAULT_TRUNCATION_RTOL,
) -> ConvergedScan:
    """Scan and fit with the charge truncation raised until both fitted amplitudes settle.

    Starting from model.n_max, n_max grows by TRUNCATION_STEP (capped at MAX_ORACLE_CHARGE)
    until eps_0 and eps_1 each change by at most rtol relative between consecutive
    truncations. The finer of the two agreeing scans is returned.

    Raises:
        CircuitDimensionError: If model.n_max already exceeds MAX_ORACLE_CHARGE
        TruncationConvergenceError: If the amplitudes still move at MAX_ORACLE_CHARGE
    """
    if model.n_max > MAX_ORACLE_CHARGE:
        raise CircuitDimensionError(f"n_max must not exceed {MAX_ORACLE_CHARGE}, got {model.n_max}")
    if rtol <= 0:
        raise ValueError(f"rtol must be positive, got {rtol}")

    n_max = min(model.n_max, MAX_ORACLE_CHARGE - TRUNCATION_STEP)
    tried: List[int] = []
    previous: Optional[Tuple[CosineFit, CosineFit]] = None

    while True:
        trial = model.with_truncation(n_max)
        scan = dispersion_scan(trial, island=island, points=points)
        fits = (fit_cosine(scan.charges, scan.e0), fit_cosine(scan.charges, scan.e1))
        tried.append(n_max)
        logger.debug(f"n_max={n_max}: eps0={fits[0].eps:.4e} GHz, eps1={fits[1].eps:.4e} GHz")

        if previous is not None and all(_settled(new, old, rtol) for new, old in zip(fits, previous)):
            logger.info(f"Charge truncation settled at n_max={n_max} (tried {tried})")
            return ConvergedScan(model=trial, scan=scan, fit0=fits[0], fit1=fits[1], truncations=tried)
        if n_max >= MAX_ORACLE_CHARGE:
            raise TruncationConvergenceError(
                f"Fitted dispersion still changes by more than {rtol:.0%} at n_max={MAX_ORACLE_CHARGE} "
                f"(N={model.n}, tried {tried})",
                tried,
            )

        previous = fits
        n_max = min(n_max + TRUNCATION_STEP, MAX_ORACLE_CHARGE)


def _ratio(numerator: float, denominator: float) -> float:
    return math.inf if denominator == 0 else numerator / denominator


def compare_with_effective(
    model: FullCircuitModel,
    scan_points: int = DEFAULT_SCAN_POINTS,
    settings: Optional[SolverSettings] = None,
    island: int = 1,
    lam: float = 1.0,
    rtol: float = DEFAULT_TRUNCATION_RTOL,
) -> Dict[str, Any]:
    """Compare exact full-circuit results with the effective single-mode model.

    Dispersion amplitudes are fitted from a scan of one island charge at a converged charge
    truncation (see converged_scan) and compared with the tight-binding values at the given
    broadening factor. The transition frequency is compared at the model's offsets, at the
    same truncation.

    Returns:
        Report with exact and effective f01, fitted and tight-binding eps_0/eps_1 and ratios
    """
    spec, scales = effective_spec(model, lam=lam)
    sol = solve_with_settings(spec, settings or SolverSettings())

    converged = converged_scan(model, island=island, points=scan_points, rtol=rtol)
    fit0, fit1 = converged.fit0, converged.fit1

    levels = exact_levels(converged.model, n_levels=2)
    exact_f01 = float(levels[1] - levels[0])
    f01_error = abs(exact_f01 - sol.f01) / sol.f01

    eps = dispersion_amplitudes(spec, sol, scales, model.n)
    ratio0 = _ratio(fit0.eps, eps.eps0)
    ratio1 = _ratio(fit1.eps, eps.eps1)
    logger.info(f"Oracle N={model.n}: f01 exact={exact_f01:.6f} GHz, effective={sol.f01:.6f} GHz")
    logger.info(f"Oracle N={model.n}: exact/tight-binding eps0 {ratio0:.3g}, eps1 {ratio1:.3g} at lambda={lam:.4f}")

    return {
        "model": converged.model.to_dict(),
        "effective": {**spec.to_dict(), **scales.to_dict()},
        "truncations": converged.truncations,
        "f01_exact_GHz": exact_f01,
        "f01_effective_GHz": sol.f01,
        "f01_relative_error": f01_error,
        "eps0_fit_GHz": fit0.eps,
        "eps1_fit_GHz": fit1.eps,
        "eps0_tight_binding_GHz": eps.eps0,
        "eps1_tight_binding_GHz": eps.eps1,
        "eps0_ratio": ratio0,
        "eps1_ratio": ratio1,
        "eps0_r_squared": fit0.r_squared,
        "eps1_r_squared": fit1.r_squared,
        "same_sign_eps_diff": (fit1.eps - fit0.eps) * (eps.eps1 - eps.eps0) > 0,
        "within_factor_two": all(0.5 <= r <= 2.0 for r in (ratio0, ratio1)),
    }


def write_scan_csv(scan: DispersionScan, filepath: Union[str, Path]) -> Path:
    """Dump a dispersion scan as CSV (Q_e, E0_GHz, E1_GHz)."""
    return export_to_csv(scan.rows(), filepath)
