"""Dephasing, relaxation and net coherence times under charge noise.

Energies enter in GHz and are turned into angular rates with 2*pi*1e9; times leave in
microseconds. A vanishing rate gives math.inf.
"""

from __future__ import annotations

import logging
import math

from ..models.coherence import CoherenceRecord
from ..models.dispersion import DispersionAmplitudes
from ..models.noise import NoiseSpec
from ..models.qubit import ArrayJunctionParams, QubitSpec
from ..models.spectrum import EigenSolution
from .noise import low_freq_amplitude, s_charge_over_e2

logger = logging.getLogger(__name__)

GHZ_TO_ANGULAR_HZ = 2.0 * math.pi * 1e9
SECONDS_TO_US = 1e6


def _rate_to_us(rate: float) -> float:
    if rate < 0 or math.isnan(rate):
        raise ValueError(f"Rate must be non-negative, got {rate}")
    return math.inf if rate == 0 else SECONDS_TO_US / rate


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")


def dephasing_rate(eps: DispersionAmplitudes, noise: NoiseSpec, n: int) -> float:
    """1/T_phi in 1/s from 1/f charge noise on the dispersion difference."""
    _check_n(n)
    island_factor = math.sqrt((n / 2.0) * ((n - 1) / 2.0 + noise.cd_ratio**2))
    bare = island_factor * GHZ_TO_ANGULAR_HZ * eps.eps_diff * low_freq_amplitude(noise) * math.pi / 2.0
    return noise.dephasing_factor * bare


def relaxation_rate(spec: QubitSpec, sol: EigenSolution, matelem: float, noise: NoiseSpec, n: int) -> float:
    """1/T1 in 1/s from ohmic charge noise at the transition frequency."""
    _check_n(n)
    if matelem < 0:
        raise ValueError(f"matelem must be a magnitude, got {matelem}")
    island_factor = (n - 2) * (n - 1) / (6.0 * n) + noise.cd_ratio**2
    coupling = (GHZ_TO_ANGULAR_HZ * spec.e_c) ** 2
    density = noise.emission_factor * s_charge_over_e2(noise, sol.f01)
    return 8.0 * coupling * matelem**2 * island_factor * density


def t_phi(eps: DispersionAmplitudes, noise: NoiseSpec, n: int) -> float:
    """Pure dephasing time (us); infinite for zero noise or degenerate dispersion."""
    return _rate_to_us(dephasing_rate(eps, noise, n))


def t_one(spec: QubitSpec, sol: EigenSolution, matelem: float, noise: NoiseSpec, n: int) -> float:
    """Relaxation time (us)."""
    return _rate_to_us(relaxation_rate(spec, sol, matelem, noise, n))


def t_two(t_phi_us: float, t_one_us: float) -> float:
    """Net coherence time from 1/T2 = 1/T_phi + 1/(2 T1); infinite inputs are exact."""
    for name, value in (("t_phi", t_phi_us), ("t_one", t_one_us)):
        if math.isnan(value) or value <= 0:
            raise ValueError(f"{name} must be positive or infinite, got {value}")

    rate = 0.0
    if not math.isinf(t_phi_us):
        rate += 1.0 / t_phi_us
    if not math.isinf(t_one_us):
        rate += 1.0 / (2.0 * t_one_us)
    return math.inf if rate == 0 else 1.0 / rate


def coherence_record(
    spec: QubitSpec,
    sol: EigenSolution,
    matelem: float,
    eps: DispersionAmplitudes,
    junctions: ArrayJunctionParams,
    noise: NoiseSpec,
) -> CoherenceRecord:
    """Assemble the coherence times at one junction count."""
    n = junctions.n
    phi_time = t_phi(eps, noise, n)
    one_time = t_one(spec, sol, matelem, noise, n)
    return CoherenceRecord(
        n=n,
        t_phi=phi_time,
        t_one=one_time,
        t_two=t_two(phi_time, one_time),
        f01=sol.f01,
        ratio_ja_ca=junctions.ratio,
        eps0=eps.eps0,
        eps1=eps.eps1,
    )
