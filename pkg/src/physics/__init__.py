"""Physics of the effective fluxonium model: scales, spectrum, dispersion, noise, coherence."""

from .coherence import coherence_record, t_one, t_phi, t_two
from .noise import low_freq_amplitude, s_charge_over_e2
from .params import array_area_scale, array_params, derive_shared_scales
from .spectrum import (
    OverlapSupportError,
    SpectrumConvergenceError,
    charge_matrix_element,
    default_grid,
    phase_matrix_element,
    shifted_overlap,
    solve_fluxonium,
    solve_fluxonium_oscillator,
    write_wavefunctions,
)
from .tightbinding import dispersion_amplitudes, dispersion_energy, epsilon_n

__all__ = [
    "derive_shared_scales",
    "array_params",
    "array_area_scale",
    "default_grid",
    "solve_fluxonium",
    "solve_fluxonium_oscillator",
    "charge_matrix_element",
    "phase_matrix_element",
    "shifted_overlap",
    "write_wavefunctions",
    "SpectrumConvergenceError",
    "OverlapSupportError",
    "epsilon_n",
    "dispersion_amplitudes",
    "dispersion_energy",
    "s_charge_over_e2",
    "low_freq_amplitude",
    "t_phi",
    "t_one",
    "t_two",
    "coherence_record",
]
