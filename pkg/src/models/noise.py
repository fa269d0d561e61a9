"""Charge-noise spectrum model."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict

DEFAULT_A_LOW = 1e-3
DEFAULT_A_HIGH = 5.2e-9
DEFAULT_F_REF_GHZ = 1.0
# O(1) prefactor of the 1/f dephasing estimate
DEFAULT_DEPHASING_FACTOR = 2.0 * math.pi
# Zero-temperature bath: emission at +omega_01 sees twice the symmetrized density
DEFAULT_EMISSION_FACTOR = 2.0


@dataclass(frozen=True)
class NoiseSpec:
    """
    Low- and high-frequency charge-noise amplitudes.

    Charges are in units of e throughout; only S/e^2 (1/Hz) leaves this model.

    Attributes:
        a_low: 1/f charge-noise amplitude A_charge/e
        a_high: Ohmic charge-noise amplitude (e/sqrt(Hz)) at the reference frequency
        f_ref: Reference frequency of the ohmic spectrum (GHz)
        cd_ratio: C_d^b/C_d^a, duplicated from QubitSpec
        dephasing_factor: Multiplies the 1/f dephasing rate; 1.0 is the bare estimate
        emission_factor: Multiplies the relaxation rate; 1.0 uses the symmetrized density as is
    """

    a_low: float = DEFAULT_A_LOW
    a_high: float = DEFAULT_A_HIGH
    f_ref: float = DEFAULT_F_REF_GHZ
    cd_ratio: float = 1.0
    dephasing_factor: float = DEFAULT_DEPHASING_FACTOR
    emission_factor: float = DEFAULT_EMISSION_FACTOR

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> bool:
        """Validate amplitudes and rate prefactors.

        Raises:
            ValueError: If an amplitude is negative or a frequency or prefactor not positive
        """
        for name in ("a_low", "a_high", "cd_ratio"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")
        for name in ("f_ref", "dephasing_factor", "emission_factor"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        return True

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "a_low_e": self.a_low,
            "a_high_e_per_sqrthz": self.a_high,
            "f_ref_ghz": self.f_ref,
            "cd_ratio": self.cd_ratio,
            "dephasing_factor": self.dephasing_factor,
            "emission_factor": self.emission_factor,
        }
