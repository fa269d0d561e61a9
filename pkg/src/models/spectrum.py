"""Phase-grid and eigen-solution models for the effective single-mode Hamiltonian."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

MIN_GRID_POINTS = 512


@dataclass(frozen=True)
class PhaseGrid:
    """
    Uniform phase grid symmetric about zero whose spacing divides 2*pi exactly.

    The grid points are theta_j = j*h for j = -K..K with h = 2*pi/steps_per_period,
    so a 2*pi shift is an exact index shift of steps_per_period.

    Attributes:
        half_steps: K, number of steps from zero to theta_max
        steps_per_period: Number of grid steps spanning 2*pi
    """

    half_steps: int
    steps_per_period: int

    def __post_init__(self) -> None:
        if self.steps_per_period < 2:
            raise ValueError(f"steps_per_period must be at least 2, got {self.steps_per_period}")
        if self.points < MIN_GRID_POINTS:
            raise ValueError(f"Phase grid needs at least {MIN_GRID_POINTS} points, got {self.points}")

    @classmethod
    def covering(cls, theta_max: float, steps_per_period: int) -> "PhaseGrid":
        """Smallest grid with the given resolution reaching at least theta_max.

        Args:
            theta_max: Required half-width of the grid (radians)
            steps_per_period: Number of grid steps spanning 2*pi

        Returns:
            PhaseGrid instance
        """
        half_steps = math.ceil(theta_max * steps_per_period / (2.0 * math.pi) - 1e-9)
        half_steps = max(half_steps, (MIN_GRID_POINTS + 1) // 2)
        return cls(half_steps=half_steps, steps_per_period=steps_per_period)

    @property
    def spacing(self) -> float:
        """Grid spacing h (radians)."""
        return 2.0 * math.pi / self.steps_per_period

    @property
    def points(self) -> int:
        """Total number of grid points."""
        return 2 * self.half_steps + 1

    @property
    def theta_max(self) -> float:
        return self.half_steps * self.spacing

    @property
    def theta_min(self) -> float:
        return -self.theta_max

    @property
    def theta(self) -> np.ndarray:
        """Grid point coordinates."""
        return np.arange(-self.half_steps, self.half_steps + 1) * self.spacing

    def refined(self) -> "PhaseGrid":
        """Same extent at half the spacing."""
        return PhaseGrid(half_steps=2 * self.half_steps, steps_per_period=2 * self.steps_per_period)

    def widened(self, factor: float) -> "PhaseGrid":
        """Same spacing extended to factor times the current half-width."""
        return PhaseGrid.covering(self.theta_max * factor, self.steps_per_period)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "theta_min": self.theta_min,
            "theta_max": self.theta_max,
            "points": self.points,
            "spacing": self.spacing,
        }


@dataclass(frozen=True, eq=False)
class EigenSolution:
    """
    Low-lying eigenstates of the effective fluxonium Hamiltonian on a phase grid.

    Wavefunctions are real, normalized with the trapezoidal rule, and sign-fixed so
    each is positive on its leftmost lobe. Arrays are read-only after construction.

    Attributes:
        grid: Phase grid the wavefunctions live on
        energies: Level energies (GHz), ascending
        wavefunctions: Array of shape (levels, points)
        flux_phi: External flux phase the Hamiltonian was solved at
        e_c: Charging energy used for the kinetic term (GHz)
    """

    grid: PhaseGrid
    energies: np.ndarray
    wavefunctions: np.ndarray
    flux_phi: float
    e_c: float
    refinements: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if len(self.energies) < 2:
            raise ValueError("EigenSolution needs at least levels 0 and 1")
        if self.wavefunctions.shape != (len(self.energies), self.grid.points):
            raise ValueError(
                f"Wavefunction array shape {self.wavefunctions.shape} does not match "
                f"{len(self.energies)} levels on {self.grid.points} points"
            )
        self.energies.setflags(write=False)
        self.wavefunctions.setflags(write=False)

    @property
    def n_levels(self) -> int:
        return len(self.energies)

    @property
    def f01(self) -> float:
        """Transition frequency E1 - E0 (GHz)."""
        return float(self.energies[1] - self.energies[0])

    @property
    def theta(self) -> np.ndarray:
        return self.grid.theta

    def wavefunction(self, level: int) -> np.ndarray:
        """Wavefunction amplitudes of one level.

        Raises:
            ValueError: If the level was not solved for
        """
        if not 0 <= level < self.n_levels:
            raise ValueError(f"Level {level} not available (solved {self.n_levels} levels)")
        return self.wavefunctions[level]

    def summary(self) -> Dict[str, Any]:
        """Scalar summary for reports."""
        return {
            "E0_GHz": float(self.energies[0]),
            "E1_GHz": float(self.energies[1]),
            "f01_GHz": self.f01,
            "levels": [float(e) for e in self.energies],
            "grid": self.grid.to_dict(),
            "refinements": self.refinements,
        }


@dataclass(frozen=True)
class SolverSettings:
    """
    Numerical controls for the finite-difference eigen-solver.

    Attributes:
        points_per_period: Grid steps spanning 2*pi on the starting grid
        theta_max: Explicit grid half-width (radians); automatic when None
        tolerance: Energy convergence threshold under grid doubling (GHz)
        max_refinements: Maximum number of grid doublings
        n_levels: Number of lowest levels solved for
    """

    points_per_period: int = 1024
    theta_max: Optional[float] = None
    tolerance: float = 1e-6
    max_refinements: int = 6
    n_levels: int = 3

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> bool:
        """Validate solver controls.

        Raises:
            ValueError: If a control is out of range
        """
        if self.points_per_period < 16:
            raise ValueError(f"points_per_period must be at least 16, got {self.points_per_period}")
        if self.theta_max is not None and not (math.isfinite(self.theta_max) and self.theta_max >= 2.0 * math.pi):
            raise ValueError(f"theta_max must be at least 2*pi, got {self.theta_max}")
        if not (self.tolerance > 0):
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_refinements < 2:
            raise ValueError(f"max_refinements must be at least 2, got {self.max_refinements}")
        if self.n_levels < 2:
            raise ValueError(f"n_levels must be at least 2, got {self.n_levels}")
        return True

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "points_per_period": self.points_per_period,
            "theta_max": self.theta_max,
            "tolerance": self.tolerance,
            "max_refinements": self.max_refinements,
            "n_levels": self.n_levels,
        }
