"""Coherence record model: one row of an N sweep."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict


@dataclass(frozen=True)
class CoherenceRecord:
    """
    Charge-noise coherence times at one junction count.

    Times are in microseconds; math.inf marks a vanishing rate.

    Attributes:
        n: Number of array junctions
        t_phi: Pure dephasing time (us)
        t_one: Relaxation time (us)
        t_two: Net coherence time (us)
        f01: Qubit transition frequency (GHz)
        ratio_ja_ca: E_J^a/E_C^a of the array junctions
        eps0: Ground-level dispersion amplitude (GHz)
        eps1: Excited-level dispersion amplitude (GHz)
    """

    n: int
    t_phi: float
    t_one: float
    t_two: float
    f01: float
    ratio_ja_ca: float
    eps0: float
    eps1: float

    def __post_init__(self) -> None:
        for name in ("t_phi", "t_one", "t_two"):
            value = getattr(self, name)
            if math.isnan(value) or value <= 0:
                raise ValueError(f"{name} must be positive or infinite, got {value}")

    @property
    def eps_diff(self) -> float:
        """|epsilon_1 - epsilon_0| (GHz)."""
        return abs(self.eps1 - self.eps0)

    def to_row(self) -> Dict[str, Any]:
        """CSV row keyed by the published column names."""
        return {
            "N": self.n,
            "T_phi_us": self.t_phi,
            "T1_us": self.t_one,
            "T2_us": self.t_two,
            "f01_GHz": self.f01,
            "EJa_over_ECa": self.ratio_ja_ca,
            "eps0_GHz": self.eps0,
            "eps1_GHz": self.eps1,
        }
