"""Exact charge-basis Hamiltonian of the full (N+1)-island fluxonium circuit.

Coordinates are (tau, Theta_1..Theta_N). The loop capacitors give C^a on each array
junction and C^b across the whole array; optional ground capacitors C_d^a on the N-1
array islands and C_d^b on the two end islands couple tau to the Theta_j.

The conserved charge N_tau is set to zero. When no ground capacitance is present tau has
no kinetic term at all and only the Theta block of the capacitance matrix is used.
"""

from __future__ import annotations

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.linalg import eigh
from scipy.sparse.linalg import eigsh

from ..models.circuit import FullCircuitModel
from ..models.qubit import DerivedScales, QubitSpec

logger = logging.getLogger(__name__)

MAX_ORACLE_N = 3
MAX_ORACLE_CHARGE = 12
DENSE_DIMENSION_LIMIT = 4000


class CircuitDimensionError(ValueError):
    """Raised when a full-circuit model exceeds the exact-diagonalization guard."""

    pass


class SingularCapacitanceError(ValueError):
    """Raised when the capacitance matrix is not positive definite."""

    pass


def charging_to_capacitance(e_c: float) -> float:
    """Capacitance e^2/2E_C in units of e^2/(h*GHz); infinite E_C gives zero."""
    if math.isinf(e_c):
        return 0.0
    if e_c <= 0:
        raise ValueError(f"Charging energy must be positive, got {e_c}")
    return 1.0 / (2.0 * e_c)


def build_capacitance_matrix(n: int, c_a: float, c_b: float, cd_a: float = 0.0, cd_b: float = 0.0) -> np.ndarray:
    """(N+1)x(N+1) capacitance matrix over (tau, Theta_1..Theta_N).

    Args:
        n: Number of array junctions
        c_a: Array junction capacitance
        c_b: Black-sheep capacitance
        cd_a: Ground capacitance of each inner array island
        cd_b: Ground capacitance of each end island

    Returns:
        Symmetric capacitance matrix
    """
    if min(c_a, c_b, cd_a, cd_b) < 0:
        raise ValueError("Capacitances must be non-negative")

    matrix = np.zeros((n + 1, n + 1))
    matrix[0, 0] = (n - 1) * cd_a + 2.0 * cd_b
    for j in range(1, n + 1):
        matrix[0, j] = matrix[j, 0] = (n - j) * cd_a + cd_b
        for k in range(1, n + 1):
            matrix[j, k] = c_b + (n - max(j, k)) * cd_a + cd_b
            if j == k:
                matrix[j, k] += c_a
    return matrix


def circuit_model(
    n: int,
    e_ja: float,
    e_ca: float,
    e_jb: float,
    e_cb: float,
    flux_phi: float = math.pi,
    n_max: int = 8,
    cd_a: float = 0.0,
    cd_b: float = 0.0,
    charge_offsets: Optional[Sequence[float]] = None,
) -> FullCircuitModel:
    """Build a FullCircuitModel from junction energies.

    Args:
        n: Number of array junctions
        e_ja: Array Josephson energy (GHz)
        e_ca: Array charging energy e^2/2C^a (GHz)
        e_jb: Black-sheep Josephson energy (GHz)
        e_cb: Black-sheep charging energy e^2/2C^b (GHz); math.inf removes C^b
        flux_phi: External flux phase
        n_max: Charge truncation per mode
        cd_a: Inner-island ground capacitance as a fraction of C^a
        cd_b: End-island ground capacitance as a fraction of C^a
        charge_offsets: (Q_tau, Q_1..Q_N) in units of e; sweet spot Q_j = 1/2 by default

    Returns:
        FullCircuitModel
    """
    c_a = charging_to_capacitance(e_ca)
    c_b = charging_to_capacitance(e_cb)
    matrix = build_capacitance_matrix(n, c_a, c_b, cd_a * c_a, cd_b * c_a)
    offsets = np.array([0.0] + [0.5] * n) if charge_offsets is None else np.asarray(charge_offsets, dtype=float)
    return FullCircuitModel(
        n=n,
        e_ja=e_ja,
        e_jb=e_jb,
        capacitance_matrix=matrix,
        charge_offsets=offsets,
        flux_phi=flux_phi,
        n_max=n_max,
        c_a=c_a,
        c_b=c_b,
    )


def _check_dimension(model: FullCircuitModel) -> None:
    if model.n > MAX_ORACLE_N or model.n_max > MAX_ORACLE_CHARGE:
        raise CircuitDimensionError(
            f"Exact diagonalization limited to N <= {MAX_ORACLE_N} and n_max <= {MAX_ORACLE_CHARGE}, "
            f"got N={model.n}, n_max={model.n_max}"
        )


def _inverse_capacitance(model: FullCircuitModel) -> Tuple[np.ndarray, np.ndarray]:
    """Inverse capacitance and the matching charge offsets, tau dropped when uncoupled."""
    if model.tau_coupled:
        matrix, offsets = model.capacitance_matrix, model.charge_offsets
    else:
        matrix, offsets = model.capacitance_matrix[1:, 1:], model.charge_offsets[1:]

    try:
        np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError as e:
        raise SingularCapacitanceError(f"Capacitance matrix is not positive definite: {matrix.tolist()}") from e
    return np.linalg.inv(matrix), offsets


def charge_states(model: FullCircuitModel) -> np.ndarray:
    """Cooper-pair numbers of every basis state, shape (dimension, N), last mode fastest."""
    values = np.arange(-model.n_max, model.n_max + 1)
    grids = np.meshgrid(*([values] * model.n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def build_full_hamiltonian(model: FullCircuitModel) -> sparse.csr_matrix:
    """Charge-basis Hamiltonian (GHz) as a sparse Hermitian matrix.

    The kinetic part is (2N + Q)^T C^-1 (2N + Q) / 2 with N_tau = 0. Each cos Theta_i hops
    N_i by one; the black-sheep term cos(sum Theta_i - phi) hops every mode at once with
    phase exp(-/+ i phi). The matrix is real whenever sin(phi) vanishes.

    Raises:
        CircuitDimensionError: If N or n_max exceeds the guard
        SingularCapacitanceError: If the capacitance matrix is not positive definite
    """
    _check_dimension(model)
    inverse, offsets = _inverse_capacitance(model)

    states = charge_states(model)
    charges = 2.0 * states.astype(float)
    if model.tau_coupled:
        charges = np.column_stack([np.zeros(len(states)), charges])
    charges = charges + offsets
    kinetic = 0.5 * np.einsum("ki,ij,kj->k", charges, inverse, charges)

    size = 2 * model.n_max + 1
    identity = sparse.identity(size, format="csr")
    raise_one = sparse.diags(np.ones(size - 1), -1, format="csr")

    def on_mode(operator: sparse.spmatrix, mode: int) -> sparse.csr_matrix:
        result = sparse.identity(1, format="csr")
        for k in range(model.n):
            result = sparse.kron(result, operator if k == mode else identity, format="csr")
        return result

    dimension = model.dimension
    hamiltonian = sparse.diags(kinetic, format="csr")

    array_cos = sparse.csr_matrix((dimension, dimension))
    for mode in range(model.n):
        hop = on_mode(raise_one, mode)
        array_cos = array_cos + 0.5 * (hop + hop.T)
    hamiltonian = hamiltonian + model.e_ja * (model.n * sparse.identity(dimension, format="csr") - array_cos)

    if model.e_jb > 0:
        all_hop = sparse.identity(1, format="csr")
        for _ in range(model.n):
            all_hop = sparse.kron(all_hop, raise_one, format="csr")

        if math.isclose(math.sin(model.flux_phi), 0.0, abs_tol=1e-15):
            cos_sum = math.cos(model.flux_phi) * 0.5 * (all_hop + all_hop.T)
        else:
            phase = complex(math.cos(model.flux_phi), -math.sin(model.flux_phi))
            cos_sum = 0.5 * (phase * all_hop + phase.conjugate() * all_hop.T)
            hamiltonian = hamiltonian.astype(complex)

        hamiltonian = hamiltonian + model.e_jb * (sparse.identity(dimension, format="csr") - cos_sum)

    logger.debug(f"Built full-circuit Hamiltonian: N={model.n}, n_max={model.n_max}, dimension={dimension}")
    return hamiltonian.tocsr()


def exact_levels(model: FullCircuitModel, n_levels: int = 2) -> np.ndarray:
    """Lowest eigenvalues of the full-circuit Hamiltonian (GHz), ascending.

    Dense diagonalization below a few thousand states, Lanczos above.
    """
    hamiltonian = build_full_hamiltonian(model)
    dimension = hamiltonian.shape[0]
    if n_levels >= dimension:
        raise ValueError(f"n_levels={n_levels} exceeds the Hilbert-space dimension {dimension}")

    if dimension <= DENSE_DIMENSION_LIMIT:
        values = eigh(hamiltonian.toarray(), eigvals_only=True, subset_by_index=[0, n_levels - 1])
    else:
        start = np.ones(dimension, dtype=hamiltonian.dtype)
        values = eigsh(hamiltonian, k=n_levels, which="SA", tol=0, v0=start, return_eigenvectors=False)
    return np.sort(np.real(values))


def effective_spec(model: FullCircuitModel, lam: float = 1.0) -> Tuple[QubitSpec, DerivedScales]:
    """Effective single-mode parameters matched to a full-circuit model.

    E_C = e^2/2(C^a/N + C^b), E_L = E_J^a/N, E_J = E_J^b, and the array charging scale
    is N e^2/2C^a. Ground capacitances are neglected.
    """
    if model.c_a <= 0:
        raise ValueError("Effective parameters need a positive array capacitance")
    if model.e_jb <= 0:
        raise ValueError("Effective parameters need a positive black-sheep Josephson energy")

    e_c = 1.0 / (2.0 * (model.c_a / model.n + model.c_b))
    e_ca = 1.0 / (2.0 * model.c_a)
    e_cb = math.inf if model.c_b == 0 else 1.0 / (2.0 * model.c_b)

    spec = QubitSpec(e_c=e_c, e_j=model.e_jb, e_l=model.e_ja / model.n, flux_phi=model.flux_phi, lam=lam)
    return spec, DerivedScales(e_cb=e_cb, script_e_ca=model.n * e_ca)
