"""Charge-noise spectral densities.

Charges are in units of e; only S/e^2 (1/Hz) leaves this module.
"""

from __future__ import annotations

import math

from ..models.noise import NoiseSpec


def s_charge_over_e2(noise: NoiseSpec, f01: float) -> float:
    """Ohmic charge-noise density at the transition frequency, S(omega)/e^2 in 1/Hz.

    S(omega) = A^2 omega / (2*pi x f_ref) with omega = 2*pi*f01, so the 2*pi factors cancel
    and the result is a_high^2 * f01 / f_ref.

    Raises:
        ValueError: If f01 is negative or not finite
    """
    if not math.isfinite(f01) or f01 < 0:
        raise ValueError(f"f01 must be a non-negative frequency, got {f01}")
    return noise.a_high**2 * f01 / noise.f_ref


def low_freq_amplitude(noise: NoiseSpec) -> float:
    """1/f charge-noise amplitude A_charge/e."""
    noise.validate()
    return noise.a_low
