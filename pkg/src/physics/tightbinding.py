"""Tight-binding charge-dispersion amplitudes and offset-charge energy shifts."""

from __future__ import annotations

import logging
import math

import numpy as np

from ..models.dispersion import DispersionAmplitudes, OffsetCharges
from ..models.qubit import DerivedScales, QubitSpec
from ..models.spectrum import EigenSolution
from .spectrum import expectation_value, shifted_overlap

logger = logging.getLogger(__name__)


def epsilon_n(spec: QubitSpec, sol: EigenSolution, scales: DerivedScales, n: int, level: int) -> float:
    """Charge-dispersion amplitude of one level at n array junctions (GHz).

    Nearest-neighbour phase slips of the periodicized eigenstate give

        eps = 4 N E_L exp(-pi^2 sqrt(lam^2 E_L / 8 Ea) (N-1))
              * [ lam^2 (pi^2/2)(1 - 1/N) S
                  + (T2 - <theta^2> S) / 2N
                  + X ((N-2) Tc - N <cos(theta/N)> S) ]

    with X = exp(-sqrt(Ea / 2 lam^2 E_L) (N-1)/N^2), Ea the array charging scale, and
    S, T2, Tc the 2*pi-shifted overlaps weighted by 1, theta^2 and cos((theta+pi)/N).
    The broadening factor lam rescales E_L inside both exponentials only.

    Args:
        spec: Qubit parameters (lam is read from here)
        sol: Eigen-solution at the qubit's flux
        scales: Shared circuit scales
        n: Number of array junctions
        level: 0 or 1

    Returns:
        Signed amplitude epsilon_level

    Raises:
        ValueError: If n < 1 or level is not 0 or 1
        OverlapSupportError: If the shifted overlaps leave the grid
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if level not in (0, 1):
        raise ValueError(f"Dispersion is defined for levels 0 and 1, got {level}")
    if not math.isclose(sol.flux_phi, spec.flux_phi, rel_tol=0, abs_tol=1e-12):
        raise ValueError(f"Solution flux {sol.flux_phi} does not match spec flux {spec.flux_phi}")

    lam_sq = spec.lam**2
    e_l_eff = lam_sq * spec.e_l
    script_e_ca = scales.script_e_ca

    prefactor = 4.0 * n * spec.e_l * math.exp(-(math.pi**2) * math.sqrt(e_l_eff / (8.0 * script_e_ca)) * (n - 1))
    inner = math.exp(-math.sqrt(script_e_ca / (2.0 * e_l_eff)) * (n - 1) / n**2)

    overlap = shifted_overlap(sol, level)
    theta_sq_overlap = shifted_overlap(sol, level, np.square)
    cos_overlap = shifted_overlap(sol, level, lambda theta: np.cos((theta + math.pi) / n))
    theta_sq_mean = expectation_value(sol, level, np.square)
    cos_mean = expectation_value(sol, level, lambda theta: np.cos(theta / n))

    bracket = (
        lam_sq * (math.pi**2 / 2.0) * (1.0 - 1.0 / n) * overlap
        + (theta_sq_overlap - theta_sq_mean * overlap) / (2.0 * n)
        + inner * ((n - 2) * cos_overlap - n * cos_mean * overlap)
    )
    return prefactor * bracket


def dispersion_amplitudes(spec: QubitSpec, sol: EigenSolution, scales: DerivedScales, n: int) -> DispersionAmplitudes:
    """Amplitudes epsilon_0 and epsilon_1 at n array junctions."""
    eps0 = epsilon_n(spec, sol, scales, n, 0)
    eps1 = epsilon_n(spec, sol, scales, n, 1)
    logger.debug(f"N={n}: eps0={eps0:.4e} GHz, eps1={eps1:.4e} GHz (lambda={spec.lam:.4f})")
    return DispersionAmplitudes(n=n, eps0=eps0, eps1=eps1, lambda_used=spec.lam)


def dispersion_energy(eps: DispersionAmplitudes, charges: OffsetCharges, level: int) -> float:
    """Energy shift of a level relative to the sweet spot Q_tau = 0, Q_j = e/2 (GHz).

    Returns -(eps_n/2) * sum_j cos(pi Q_j - pi Q_tau / 2), charges in units of e.

    Raises:
        ValueError: If the number of island charges differs from eps.n
    """
    if charges.n != eps.n:
        raise ValueError(f"Expected {eps.n} island charges, got {charges.n}")

    q = np.asarray(charges.q_list, dtype=float)
    phases = math.pi * q - math.pi * charges.q_tau / 2.0
    return -0.5 * eps.level(level) * float(np.sum(np.cos(phases)))
