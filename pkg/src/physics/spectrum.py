"""Eigen-solver for the effective single-mode fluxonium Hamiltonian.

H = 4 E_C n^2 + E_J (1 - cos(theta - phi)) + E_L theta^2 / 2, with n = -i d/dtheta and the
offset charge gauged away. The phase is non-compact, so the problem is solved on a finite
grid wide enough for every solved level to vanish at the edges.

Two discretizations are provided:

- ``solve_fluxonium``: second-order central differences on a PhaseGrid, solved with a
  tridiagonal eigensolver, refined by grid doubling with Richardson-extrapolated energies.
- ``solve_fluxonium_oscillator``: dense diagonalization in the harmonic-oscillator basis
  of the inductive term, used as an independent cross-check.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Callable, List, Optional, Union

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import eigh, eigh_tridiagonal

from ..models.qubit import QubitSpec
from ..models.spectrum import EigenSolution, PhaseGrid, SolverSettings

logger = logging.getLogger(__name__)

Weight = Callable[[np.ndarray], np.ndarray]

DEFAULT_POINTS_PER_PERIOD = 1024
DEFAULT_TOLERANCE = 1e-6
DEFAULT_MAX_REFINEMENTS = 6
DEFAULT_N_LEVELS = 3
DEFAULT_OSCILLATOR_CUTOFF = 300

MIN_THETA_MAX = 4.0 * math.pi
WIDTHS_PER_HALF_GRID = 12.0
BOUNDARY_TOLERANCE = 1e-10
SUPPORT_TOLERANCE = 1e-8
WIDEN_FACTOR = 1.5
MAX_WIDENINGS = 6


class SpectrumConvergenceError(Exception):
    """Raised when grid refinement or widening fails to converge within its limit."""

    pass


class OverlapSupportError(ValueError):
    """Raised when a 2*pi-shifted wavefunction leaves the grid's support region."""

    pass


def default_grid(
    spec: QubitSpec,
    points_per_period: int = DEFAULT_POINTS_PER_PERIOD,
    theta_max: Optional[float] = None,
) -> PhaseGrid:
    """Starting grid for a spec.

    The half-width is max(4*pi, 12 phase widths), so every low level has decayed far below
    the boundary tolerance and a 2*pi shift stays inside the grid.

    Args:
        spec: Qubit parameters
        points_per_period: Grid steps spanning 2*pi
        theta_max: Explicit half-width override (radians)

    Returns:
        PhaseGrid
    """
    if theta_max is None:
        theta_max = max(MIN_THETA_MAX, WIDTHS_PER_HALF_GRID * spec.phase_width)
    return PhaseGrid.covering(theta_max, points_per_period)


def potential(spec: QubitSpec, theta: np.ndarray) -> np.ndarray:
    """Josephson plus inductive potential (GHz) at the given phases."""
    return spec.e_j * (1.0 - np.cos(theta - spec.flux_phi)) + 0.5 * spec.e_l * theta**2


def solve_on_grid(spec: QubitSpec, grid: PhaseGrid, n_levels: int = DEFAULT_N_LEVELS) -> EigenSolution:
    """Solve the finite-difference Hamiltonian on one fixed grid, without refinement.

    Args:
        spec: Qubit parameters
        grid: Phase grid
        n_levels: Number of lowest levels to compute

    Returns:
        EigenSolution with the raw grid energies
    """
    if n_levels < 2:
        raise ValueError(f"n_levels must be at least 2, got {n_levels}")

    theta = grid.theta
    h = grid.spacing
    kinetic = 4.0 * spec.e_c / h**2

    diagonal = 2.0 * kinetic + potential(spec, theta)
    off_diagonal = np.full(grid.points - 1, -kinetic)

    energies, vectors = eigh_tridiagonal(
        diagonal,
        off_diagonal,
        select="i",
        select_range=(0, n_levels - 1),
    )

    wavefunctions = np.empty((n_levels, grid.points))
    for level in range(n_levels):
        wavefunctions[level] = _normalize(vectors[:, level], h)

    return EigenSolution(
        grid=grid,
        energies=np.asarray(energies, dtype=float),
        wavefunctions=wavefunctions,
        flux_phi=spec.flux_phi,
        e_c=spec.e_c,
    )


def solve_fluxonium(
    spec: QubitSpec,
    grid: Optional[PhaseGrid] = None,
    n_levels: int = DEFAULT_N_LEVELS,
    tolerance: float = DEFAULT_TOLERANCE,
    max_refinements: int = DEFAULT_MAX_REFINEMENTS,
) -> EigenSolution:
    """Solve the effective fluxonium Hamiltonian to a converged set of low-lying levels.

    The grid is first widened until every level is below 1e-10 at both edges, then halved
    in spacing repeatedly. Energies on consecutive grids are combined by Richardson
    extrapolation (the scheme is second order), and refinement stops once two successive
    extrapolated estimates agree within ``tolerance`` for every level. Wavefunctions come
    from the finest grid.

    Args:
        spec: Qubit parameters
        grid: Starting grid (default_grid(spec) if omitted)
        n_levels: Number of lowest levels to compute (at least 2)
        tolerance: Convergence threshold on the energies (GHz)
        max_refinements: Maximum number of grid doublings

    Returns:
        Converged EigenSolution

    Raises:
        SpectrumConvergenceError: If widening or refinement does not converge
    """
    if max_refinements < 2:
        raise ValueError(f"max_refinements must be at least 2, got {max_refinements}")
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")

    grid = grid or default_grid(spec)
    current = _solve_contained(spec, grid, n_levels)
    grid = current.grid

    previous_energies = current.energies
    previous_estimate: Optional[np.ndarray] = None

    for refinement in range(1, max_refinements + 1):
        grid = grid.refined()
        current = solve_on_grid(spec, grid, n_levels)
        estimate = (4.0 * current.energies - previous_energies) / 3.0

        if previous_estimate is not None:
            change = float(np.max(np.abs(estimate - previous_estimate)))
            logger.debug(f"Refinement {refinement}: {grid.points} points, max energy change {change:.3e} GHz")
            if change < tolerance:
                logger.info(
                    f"Solved effective Hamiltonian: f01={estimate[1] - estimate[0]:.6f} GHz "
                    f"on {grid.points} points after {refinement} refinements"
                )
                return EigenSolution(
                    grid=grid,
                    energies=estimate,
                    wavefunctions=np.array(current.wavefunctions),
                    flux_phi=spec.flux_phi,
                    e_c=spec.e_c,
                    refinements=refinement,
                )

        previous_estimate = estimate
        previous_energies = current.energies

    raise SpectrumConvergenceError(
        f"Energies did not converge to {tolerance:g} GHz within {max_refinements} grid refinements "
        f"(e_c={spec.e_c}, e_j={spec.e_j}, e_l={spec.e_l})"
    )


def solve_with_settings(spec: QubitSpec, settings: SolverSettings) -> EigenSolution:
    """Solve with the grid and convergence controls of a SolverSettings."""
    grid = default_grid(spec, settings.points_per_period, settings.theta_max)
    return solve_fluxonium(
        spec,
        grid,
        n_levels=settings.n_levels,
        tolerance=settings.tolerance,
        max_refinements=settings.max_refinements,
    )


def _solve_contained(spec: QubitSpec, grid: PhaseGrid, n_levels: int) -> EigenSolution:
    """Solve on the grid, widening it until every level vanishes at the edges."""
    for _ in range(MAX_WIDENINGS + 1):
        solution = solve_on_grid(spec, grid, n_levels)
        edge = boundary_amplitude(solution)
        if edge < BOUNDARY_TOLERANCE:
            return solution
        logger.warning(f"Boundary amplitude {edge:.2e} at theta_max={grid.theta_max:.3f}; widening grid")
        grid = grid.widened(WIDEN_FACTOR)

    raise SpectrumConvergenceError(
        f"Wavefunctions still reach the grid edge after {MAX_WIDENINGS} widenings "
        f"(theta_max={grid.theta_max:.3f})"
    )


def solve_fluxonium_oscillator(
    spec: QubitSpec,
    cutoff: int = DEFAULT_OSCILLATOR_CUTOFF,
    n_levels: int = DEFAULT_N_LEVELS,
) -> np.ndarray:
    """Lowest energies from dense diagonalization in the oscillator basis.

    The inductive and charging terms form an oscillator of frequency sqrt(8 E_C E_L) with
    phase = (8E_C/E_L)^(1/4) (a + a^dag)/sqrt(2); the cosine is built from the eigenbasis
    of the truncated phase operator.

    Args:
        spec: Qubit parameters
        cutoff: Number of oscillator states kept
        n_levels: Number of energies returned

    Returns:
        Array of the n_levels lowest energies (GHz)
    """
    if cutoff < n_levels + 1:
        raise ValueError(f"cutoff must exceed n_levels, got cutoff={cutoff}, n_levels={n_levels}")

    omega = spec.plasma_frequency
    phi_zpf = (8.0 * spec.e_c / spec.e_l) ** 0.25

    a = np.diag(np.sqrt(np.arange(1, cutoff)), k=1)
    phase = phi_zpf * (a + a.T) / np.sqrt(2.0)

    positions, basis = eigh(phase - spec.flux_phi * np.eye(cutoff))
    cos_phase = basis @ np.diag(np.cos(positions)) @ basis.T

    hamiltonian = omega * np.diag(np.arange(cutoff) + 0.5) + spec.e_j * (np.eye(cutoff) - cos_phase)
    energies = eigh(hamiltonian, eigvals_only=True, subset_by_index=[0, n_levels - 1])
    return np.asarray(energies, dtype=float)


def boundary_amplitude(sol: EigenSolution) -> float:
    """Largest |psi_n| at either grid edge over all solved levels."""
    edges = np.abs(sol.wavefunctions[:, [0, -1]])
    return float(np.max(edges))


def charge_matrix_element(sol: EigenSolution, level_a: int = 0, level_b: int = 1) -> float:
    """|<psi_a| n |psi_b>| with n = -i d/dtheta.

    The derivative is a fourth-order central difference with zero padding, an exactly
    antisymmetric operator, so the result is symmetric in the two levels.
    """
    h = sol.grid.spacing
    derivative = _central_derivative(sol.wavefunction(level_b), h)
    return abs(float(trapezoid(sol.wavefunction(level_a) * derivative, dx=h)))


def phase_matrix_element(sol: EigenSolution, level_a: int = 0, level_b: int = 1) -> float:
    """|<psi_a| theta |psi_b>|.

    Satisfies |<0|n|1>| = f01 |<0|theta|1>| / (8 E_C) for exact eigenstates.
    """
    integrand = sol.wavefunction(level_a) * sol.theta * sol.wavefunction(level_b)
    return abs(float(trapezoid(integrand, dx=sol.grid.spacing)))


def shifted_overlap(
    sol: EigenSolution,
    level: int,
    weight: Optional[Weight] = None,
    shift_periods: int = 1,
) -> float:
    """Integral of psi_n(theta + 2*pi*s) psi_n(theta) weight(theta) over the grid.

    The grid spacing divides 2*pi exactly, so the shift is an index offset with no
    interpolation. Points whose shifted partner lies beyond the edge contribute nothing,
    which is exact once the wavefunction has vanished there.

    Args:
        sol: Eigen-solution
        level: Level index n
        weight: Function of theta multiplying the integrand (1 if omitted)
        shift_periods: Number s of 2*pi periods to shift by (0 gives a plain expectation)

    Returns:
        Quadrature value

    Raises:
        OverlapSupportError: If the shift leaves the grid or the wavefunction is not contained
    """
    if shift_periods < 0:
        raise ValueError(f"shift_periods must be non-negative, got {shift_periods}")

    grid = sol.grid
    offset = grid.steps_per_period * shift_periods
    if offset >= grid.points:
        raise OverlapSupportError(
            f"A shift of {shift_periods} x 2*pi exceeds the grid (theta_max={grid.theta_max:.3f})"
        )

    psi = sol.wavefunction(level)
    _check_support(psi, level)

    theta = sol.theta
    if offset == 0:
        integrand = psi * psi
        points = theta
    else:
        integrand = psi[offset:] * psi[:-offset]
        points = theta[:-offset]

    if weight is not None:
        integrand = integrand * weight(points)
    return float(trapezoid(integrand, dx=grid.spacing))


def expectation_value(sol: EigenSolution, level: int, weight: Weight) -> float:
    """Integral of |psi_n(theta)|^2 weight(theta)."""
    return shifted_overlap(sol, level, weight, shift_periods=0)


def parity_overlap(sol: EigenSolution, level: int) -> float:
    """Integral of psi_n(theta) psi_n(-theta); +1 for even and -1 for odd states."""
    psi = sol.wavefunction(level)
    return float(trapezoid(psi * psi[::-1], dx=sol.grid.spacing))


def write_wavefunctions(sol: EigenSolution, path: Union[str, Path], levels: Optional[List[int]] = None) -> List[Path]:
    """Dump wavefunctions as two-column (theta, psi_n) text, one file per level.

    Files are named ``<stem>_level<n><suffix>`` next to ``path`` (suffix ``.dat`` if none).

    Returns:
        Paths written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    suffix = path.suffix or ".dat"
    levels = list(range(sol.n_levels)) if levels is None else levels

    written = []
    for level in levels:
        target = path.with_name(f"{path.stem}_level{level}{suffix}")
        columns = np.column_stack([sol.theta, sol.wavefunction(level)])
        np.savetxt(target, columns, fmt="%.12e", header=f"theta psi_{level}")
        written.append(target)
        logger.debug(f"Wrote level {level} wavefunction to {target}")

    return written


def _normalize(vector: np.ndarray, h: float) -> np.ndarray:
    """Trapezoid-normalize and fix the sign so the leftmost lobe is positive."""
    psi = vector / math.sqrt(float(trapezoid(vector**2, dx=h)))
    magnitude = np.abs(psi)
    first_lobe = int(np.argmax(magnitude > 1e-3 * magnitude.max()))
    if psi[first_lobe] < 0:
        psi = -psi
    return psi


def _central_derivative(psi: np.ndarray, h: float) -> np.ndarray:
    padded = np.pad(psi, 2)
    return (padded[:-4] - 8.0 * padded[1:-3] + 8.0 * padded[3:-1] - padded[4:]) / (12.0 * h)


def _check_support(psi: np.ndarray, level: int) -> None:
    edge = max(abs(psi[0]), abs(psi[-1]))
    if edge > SUPPORT_TOLERANCE * np.max(np.abs(psi)):
        raise OverlapSupportError(f"Level {level} wavefunction reaches the grid edge (amplitude {edge:.2e})")
