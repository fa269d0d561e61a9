"""Data models for the fluxonium array optimizer."""

from .circuit import ConvergedScan, CosineFit, DispersionScan, FullCircuitModel
from .coherence import CoherenceRecord
from .dispersion import DispersionAmplitudes, OffsetCharges
from .noise import NoiseSpec
from .qubit import ArrayJunctionParams, DerivedScales, QubitSpec
from .spectrum import EigenSolution, PhaseGrid, SolverSettings
from .sweep import SurveyEntry, SweepResult

__all__ = [
    "QubitSpec",
    "DerivedScales",
    "ArrayJunctionParams",
    "PhaseGrid",
    "EigenSolution",
    "SolverSettings",
    "DispersionAmplitudes",
    "OffsetCharges",
    "NoiseSpec",
    "CoherenceRecord",
    "SweepResult",
    "SurveyEntry",
    "FullCircuitModel",
    "DispersionScan",
    "CosineFit",
    "ConvergedScan",
]
