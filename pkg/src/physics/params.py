"""N-independent circuit scales and per-N array junction parameters."""

from __future__ import annotations

import logging
import math

from ..models.qubit import ArrayJunctionParams, DerivedScales, QubitSpec

logger = logging.getLogger(__name__)


def derive_shared_scales(spec: QubitSpec) -> DerivedScales:
    """Derive the black-sheep and array charging scales from the target parameters.

    The black-sheep capacitance is C^b = (e^2/2E_C)/(1 + E_L/E_J), and the array
    capacitances take up the remainder of the total, giving an array charging scale
    N*E_C^a that does not depend on N. Ground capacitances are neglected.

    Args:
        spec: Target qubit parameters

    Returns:
        DerivedScales with e_cb and script_e_ca

    Raises:
        ValueError: If any energy is non-positive
    """
    if spec.e_j <= 0:
        raise ValueError(f"e_j must be positive to derive the black-sheep capacitance, got {spec.e_j}")
    if spec.e_c <= 0 or spec.e_l <= 0:
        raise ValueError(f"e_c and e_l must be positive, got e_c={spec.e_c}, e_l={spec.e_l}")

    e_cb = spec.e_c * (1.0 + spec.e_l / spec.e_j)
    script_e_ca = 1.0 / (1.0 / spec.e_c - 1.0 / e_cb)

    logger.debug(f"Derived scales: e_cb={e_cb:.6g} GHz, script_e_ca={script_e_ca:.6g} GHz")
    return DerivedScales(e_cb=e_cb, script_e_ca=script_e_ca)


def array_params(scales: DerivedScales, spec: QubitSpec, n: int) -> ArrayJunctionParams:
    """Array junction parameters that realize the qubit with n junctions.

    Args:
        scales: Shared scales from derive_shared_scales
        spec: Target qubit parameters
        n: Number of array junctions

    Returns:
        ArrayJunctionParams for this n

    Raises:
        ValueError: If n < 1
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    n = int(n)

    e_ja = n * spec.e_l
    e_ca = scales.script_e_ca / n
    capacitance_ratio = n * spec.e_l / spec.e_j if spec.e_j > 0 else math.inf

    return ArrayJunctionParams(
        n=n,
        e_ja=e_ja,
        e_ca=e_ca,
        ratio=e_ja / e_ca,
        capacitance_ratio=capacitance_ratio,
    )


def array_area_scale(n: int, n_reference: int) -> float:
    """Junction-area factor that moves a device from n_reference to n array junctions.

    E_J^a and C^a both grow linearly with N at fixed qubit parameters, so the array
    junction area scales as n/n_reference.
    """
    if n < 1 or n_reference < 1:
        raise ValueError(f"Junction counts must be positive, got n={n}, n_reference={n_reference}")
    return n / n_reference
