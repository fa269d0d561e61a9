"""Sweep and survey result models."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .coherence import CoherenceRecord


@dataclass
class SweepResult:
    """
    Coherence records over a range of junction counts and their optimum.

    Attributes:
        records: CoherenceRecords ordered by N
        n_opt: Junction count maximizing T2 (ties resolved toward smaller N)
        t2_opt: T2 at n_opt (us)
        band_low: Lower rule-of-thumb bound 5/sqrt(E_L/script_e_ca)
        band_high: Upper rule-of-thumb bound 10/sqrt(E_L/script_e_ca)
        el_over_script_eca: E_L/script_e_ca of the device
        parameters: Device and noise parameters the sweep ran with
    """

    records: List[CoherenceRecord]
    n_opt: int
    t2_opt: float
    band_low: float
    band_high: float
    el_over_script_eca: float
    parameters: Dict[str, Any] = field(default_factory=dict)

    @property
    def in_band(self) -> bool:
        """Whether the optimum lies inside the rule-of-thumb band."""
        return self.band_low <= self.n_opt <= self.band_high

    @property
    def optimal_record(self) -> CoherenceRecord:
        return self.record_at(self.n_opt)

    @property
    def ratio_at_opt(self) -> float:
        """E_J^a/E_C^a at the optimum."""
        return self.optimal_record.ratio_ja_ca

    def record_at(self, n: int) -> CoherenceRecord:
        """Record for one junction count.

        Raises:
            KeyError: If N was not swept
        """
        for record in self.records:
            if record.n == n:
                return record
        raise KeyError(f"N={n} not in sweep range")

    def summary(self) -> Dict[str, Any]:
        """JSON summary of the optimum and the rule-of-thumb band."""
        return {
            "n_opt": self.n_opt,
            "t2_opt": self.t2_opt,
            "band_low": self.band_low,
            "band_high": self.band_high,
            "in_band": self.in_band,
            "ratio_at_opt": self.ratio_at_opt,
            "EL_over_script_ECa": self.el_over_script_eca,
            "n_min": self.records[0].n,
            "n_max": self.records[-1].n,
            "parameters": self.parameters,
        }


@dataclass(frozen=True)
class SurveyEntry:
    """
    Optimum of one device in a multi-device survey.

    Attributes:
        label: Device label (config file stem)
        el_over_script_eca: E_L/script_e_ca
        n_opt: Optimal junction count
        t2_opt: T2 at the optimum (us)
        band_low: Lower rule-of-thumb bound
        band_high: Upper rule-of-thumb bound
    """

    label: str
    el_over_script_eca: float
    n_opt: int
    t2_opt: float
    band_low: float
    band_high: float
    lam: Optional[float] = None

    @property
    def in_band(self) -> bool:
        return self.band_low <= self.n_opt <= self.band_high

    def to_row(self) -> Dict[str, Any]:
        return {
            "device": self.label,
            "EL_over_script_ECa": self.el_over_script_eca,
            "lambda": self.lam,
            "n_opt": self.n_opt,
            "T2_opt_us": self.t2_opt,
            "band_low": self.band_low,
            "band_high": self.band_high,
            "in_band": self.in_band,
        }
