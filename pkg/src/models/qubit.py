"""Qubit parameter models.

This module defines the fixed fluxonium target parameters, the N-independent
circuit scales derived from them, and the per-N array junction parameters.
All energies are E/h in GHz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict

LAMBDA_HARMONIC = 1.0
LAMBDA_BROADENED = 2.0 / math.pi
LAMBDA_MATHIEU = 8.0 / math.pi**2

LAMBDA_PRESETS: Dict[str, float] = {
    "harmonic": LAMBDA_HARMONIC,
    "broadened": LAMBDA_BROADENED,
    "mathieu": LAMBDA_MATHIEU,
}


@dataclass(frozen=True)
class QubitSpec:
    """
    Target fluxonium parameters held fixed while the junction count varies.

    Attributes:
        e_c: Charging energy E_C (GHz)
        e_j: Black-sheep Josephson energy E_J (GHz); zero gives the harmonic limit
        e_l: Inductive energy E_L (GHz)
        flux_phi: External flux phase in radians (pi is the half-flux sweet spot)
        lam: Wavefunction broadening factor in (0, 1]
        cd_ratio: Ratio of end-island to array-island ground capacitance C_d^b/C_d^a
    """

    e_c: float
    e_j: float
    e_l: float
    flux_phi: float = math.pi
    lam: float = LAMBDA_HARMONIC
    cd_ratio: float = 1.0

    def __post_init__(self) -> None:
        """Validate on construction."""
        self.validate()

    def validate(self) -> bool:
        """Validate parameter ranges.

        Returns:
            True if valid

        Raises:
            ValueError: If any parameter is out of range
        """
        for name in ("e_c", "e_l"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ValueError(f"{name} must be a positive energy, got {value}")
        if not math.isfinite(self.e_j) or self.e_j < 0:
            raise ValueError(f"e_j must be a non-negative energy, got {self.e_j}")
        if not math.isfinite(self.flux_phi):
            raise ValueError(f"flux_phi must be finite, got {self.flux_phi}")
        if not (0 < self.lam <= 1):
            raise ValueError(f"lam must lie in (0, 1], got {self.lam}")
        if not math.isfinite(self.cd_ratio) or self.cd_ratio < 0:
            raise ValueError(f"cd_ratio must be non-negative, got {self.cd_ratio}")
        return True

    @property
    def plasma_frequency(self) -> float:
        """Harmonic frequency sqrt(8 E_C E_L) of the inductive confinement (GHz)."""
        return math.sqrt(8.0 * self.e_c * self.e_l)

    @property
    def phase_width(self) -> float:
        """Standard deviation (2 E_C/E_L)^(1/4) of the harmonic ground state in phase."""
        return (2.0 * self.e_c / self.e_l) ** 0.25

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "e_c_ghz": self.e_c,
            "e_j_ghz": self.e_j,
            "e_l_ghz": self.e_l,
            "flux_phi": self.flux_phi,
            "lambda": self.lam,
            "cd_ratio": self.cd_ratio,
        }


@dataclass(frozen=True)
class DerivedScales:
    """
    Circuit scales that do not depend on the junction count.

    Attributes:
        e_cb: Black-sheep charging energy e^2/2C^b (GHz)
        script_e_ca: Array charging scale N*E_C^a (GHz)
    """

    e_cb: float
    script_e_ca: float

    def __post_init__(self) -> None:
        if self.e_cb <= 0 or self.script_e_ca <= 0:
            raise ValueError(f"Derived scales must be positive, got e_cb={self.e_cb}, script_e_ca={self.script_e_ca}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {"e_cb_ghz": self.e_cb, "script_e_ca_ghz": self.script_e_ca}


@dataclass(frozen=True)
class ArrayJunctionParams:
    """
    Array junction parameters realizing a QubitSpec at a given junction count.

    Attributes:
        n: Number of array junctions
        e_ja: Array Josephson energy N*E_L (GHz)
        e_ca: Array charging energy script_e_ca/N (GHz)
        ratio: E_J^a/E_C^a
        capacitance_ratio: C^a/C^b, equal to E_J^a/E_J^b since both scale with junction area
    """

    n: int
    e_ja: float
    e_ca: float
    ratio: float
    capacitance_ratio: float

    @property
    def exceeds_black_sheep(self) -> bool:
        """Whether array junctions are larger than the black-sheep junction (C^a > C^b)."""
        return self.capacitance_ratio > 1.0

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "N": self.n,
            "EJa_GHz": self.e_ja,
            "ECa_GHz": self.e_ca,
            "EJa_over_ECa": self.ratio,
            "Ca_over_Cb": self.capacitance_ratio,
        }
