"""Exact small-N full-circuit oracle."""

from .circuit import (
    CircuitDimensionError,
    SingularCapacitanceError,
    build_capacitance_matrix,
    build_full_hamiltonian,
    circuit_model,
    effective_spec,
    exact_levels,
)
from .reporter import OracleReporter
from .scan import (
    TruncationConvergenceError,
    compare_with_effective,
    converged_scan,
    dispersion_scan,
    fit_cosine,
    write_scan_csv,
)

__all__ = [
    "CircuitDimensionError",
    "SingularCapacitanceError",
    "build_capacitance_matrix",
    "build_full_hamiltonian",
    "circuit_model",
    "effective_spec",
    "exact_levels",
    "dispersion_scan",
    "converged_scan",
    "TruncationConvergenceError",
    "fit_cosine",
    "compare_with_effective",
    "write_scan_csv",
    "OracleReporter",
]
