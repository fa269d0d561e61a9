"""Charge-dispersion models."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass(frozen=True)
class DispersionAmplitudes:
    """
    Tight-binding charge-dispersion amplitudes at one junction count.

    Attributes:
        n: Number of array junctions
        eps0: Ground-level amplitude epsilon_0 (GHz)
        eps1: First-excited-level amplitude epsilon_1 (GHz)
        lambda_used: Broadening factor the amplitudes were evaluated with
    """

    n: int
    eps0: float
    eps1: float
    lambda_used: float = 1.0

    @property
    def eps_diff(self) -> float:
        """|epsilon_1 - epsilon_0| (GHz), the quantity that sets pure dephasing."""
        return abs(self.eps1 - self.eps0)

    def level(self, level: int) -> float:
        """Amplitude of level 0 or 1."""
        if level == 0:
            return self.eps0
        if level == 1:
            return self.eps1
        raise ValueError(f"Dispersion amplitudes exist for levels 0 and 1 only, got {level}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {"N": self.n, "eps0_GHz": self.eps0, "eps1_GHz": self.eps1, "lambda": self.lambda_used}


@dataclass(frozen=True)
class OffsetCharges:
    """
    Offset charges in units of e.

    Attributes:
        q_tau: Offset charge of the tau mode
        q_list: Offset charges Q_1..Q_N of the array islands
    """

    q_tau: float = 0.0
    q_list: List[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        values = [self.q_tau, *self.q_list]
        if not all(math.isfinite(v) for v in values):
            raise ValueError("Offset charges must be finite")

    @classmethod
    def sweet_spot(cls, n: int) -> "OffsetCharges":
        """Reference configuration Q_tau = 0, Q_j = e/2 where every cosine vanishes."""
        return cls(q_tau=0.0, q_list=[0.5] * n)

    @property
    def n(self) -> int:
        return len(self.q_list)
