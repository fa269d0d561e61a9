"""Full-circuit model for exact small-N diagonalization."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np


@dataclass(frozen=True, eq=False)
class FullCircuitModel:
    """
    The (N+1)-island fluxonium circuit in the Cooper-pair-number basis.

    Capacitances are expressed in units of e^2/(h*GHz), so a capacitance C has
    charging energy e^2/2C = 1/(2*C) GHz.

    Attributes:
        n: Number of array junctions (2 or 3 in practice)
        e_ja: Array Josephson energy (GHz)
        e_jb: Black-sheep Josephson energy (GHz)
        capacitance_matrix: (N+1)x(N+1) symmetric matrix over (tau, Theta_1..Theta_N)
        charge_offsets: Offsets (Q_tau, Q_1..Q_N) in units of e
        flux_phi: External flux phase (radians)
        n_max: Charge truncation per mode, Cooper-pair numbers -n_max..n_max
        c_a: Array junction capacitance C^a the matrix was built from
        c_b: Black-sheep capacitance C^b the matrix was built from
    """

    n: int
    e_ja: float
    e_jb: float
    capacitance_matrix: np.ndarray
    charge_offsets: np.ndarray
    flux_phi: float = math.pi
    n_max: int = 8
    c_a: float = 0.0
    c_b: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.capacitance_matrix.shape != (self.n + 1, self.n + 1):
            raise ValueError(
                f"Capacitance matrix must be {self.n + 1}x{self.n + 1}, got {self.capacitance_matrix.shape}"
            )
        if not np.allclose(self.capacitance_matrix, self.capacitance_matrix.T, rtol=0, atol=1e-12):
            raise ValueError("Capacitance matrix must be symmetric")
        if len(self.charge_offsets) != self.n + 1:
            raise ValueError(f"Expected {self.n + 1} charge offsets (Q_tau, Q_1..Q_N), got {len(self.charge_offsets)}")
        if self.e_ja < 0 or self.e_jb < 0:
            raise ValueError("Josephson energies must be non-negative")
        if self.n_max < 1:
            raise ValueError(f"n_max must be at least 1, got {self.n_max}")

    @property
    def dimension(self) -> int:
        """Hilbert-space dimension after eliminating the conserved tau charge."""
        return int((2 * self.n_max + 1) ** self.n)

    @property
    def tau_coupled(self) -> bool:
        """Whether the tau mode carries capacitance (any ground capacitance present)."""
        return bool(self.capacitance_matrix[0, 0] > 0)

    def with_offsets(self, offsets: Union[Sequence[float], np.ndarray]) -> "FullCircuitModel":
        """Copy with different charge offsets (Q_tau, Q_1..Q_N)."""
        return replace(self, charge_offsets=np.asarray(offsets, dtype=float))

    def with_truncation(self, n_max: int) -> "FullCircuitModel":
        """Copy with a different charge truncation."""
        return replace(self, n_max=n_max)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "N": self.n,
            "EJa_GHz": self.e_ja,
            "EJb_GHz": self.e_jb,
            "capacitance_matrix": self.capacitance_matrix.tolist(),
            "charge_offsets": self.charge_offsets.tolist(),
            "flux_phi": self.flux_phi,
            "n_max": self.n_max,
            "dimension": self.dimension,
            "Ca": self.c_a,
            "Cb": self.c_b,
        }


@dataclass(frozen=True)
class DispersionScan:
    """
    Exact ground and first-excited energies along a sweep of one offset charge.

    Attributes:
        island: Index j of the scanned offset Q_j (1-based, as in Q_1..Q_N)
        charges: Scanned Q_j values (units of e)
        e0: Ground energies (GHz)
        e1: First-excited energies (GHz)
    """

    island: int
    charges: List[float]
    e0: List[float]
    e1: List[float]

    def rows(self) -> List[Dict[str, float]]:
        return [{"Q_e": q, "E0_GHz": a, "E1_GHz": b} for q, a, b in zip(self.charges, self.e0, self.e1)]


@dataclass(frozen=True)
class CosineFit:
    """
    Least-squares fit E(Q) = offset - (eps/2) cos(pi Q).

    Attributes:
        eps: Fitted dispersion amplitude (GHz), signed as in the tight-binding convention
        offset: Fitted constant (GHz)
        r_squared: Coefficient of determination
    """

    eps: float
    offset: float
    r_squared: float
    peak_to_peak: Optional[float] = None


@dataclass(frozen=True)
class ConvergedScan:
    """
    Dispersion scan at the smallest charge truncation whose cosine fits have settled.

    Attributes:
        model: Full-circuit model at the accepted truncation
        scan: Offset-charge scan of that model
        fit0: Cosine fit of the ground level
        fit1: Cosine fit of the first excited level
        truncations: Every n_max tried, the accepted one last
    """

    model: FullCircuitModel
    scan: DispersionScan
    fit0: CosineFit
    fit1: CosineFit
    truncations: List[int]
