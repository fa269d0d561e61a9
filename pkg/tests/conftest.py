"""Shared test fixtures for the fluxonium array optimizer tests."""

import math
from pathlib import Path

import pytest

from src.models.noise import NoiseSpec
from src.models.qubit import QubitSpec
from src.physics.params import derive_shared_scales
from src.physics.spectrum import solve_fluxonium

REPO_ROOT = Path(__file__).resolve().parent.parent
CONFIG_DIR = REPO_ROOT / "configs"


@pytest.fixture(scope="session")
def high_freq_spec() -> QubitSpec:
    """Device with E_C = 2.5, E_J = 9.0, E_L = 0.52 GHz at half flux."""
    return QubitSpec(e_c=2.5, e_j=9.0, e_l=0.52, flux_phi=math.pi)


@pytest.fixture(scope="session")
def low_freq_spec() -> QubitSpec:
    """Device with E_C = 0.55, E_J = 2.2, E_L = 0.72 GHz at half flux."""
    return QubitSpec(e_c=0.55, e_j=2.2, e_l=0.72, flux_phi=math.pi)


@pytest.fixture(scope="session")
def high_freq_solution(high_freq_spec):
    """Converged eigen-solution of the E_C = 2.5 GHz device, solved once per session."""
    return solve_fluxonium(high_freq_spec)


@pytest.fixture(scope="session")
def low_freq_solution(low_freq_spec):
    """Converged eigen-solution of the E_C = 0.55 GHz device, solved once per session."""
    return solve_fluxonium(low_freq_spec)


@pytest.fixture(scope="session")
def high_freq_scales(high_freq_spec):
    return derive_shared_scales(high_freq_spec)


@pytest.fixture(scope="session")
def low_freq_scales(low_freq_spec):
    return derive_shared_scales(low_freq_spec)


@pytest.fixture
def noise() -> NoiseSpec:
    """Default charge-noise amplitudes: 1e-3 e (1/f) and 5.2e-9 e/sqrt(Hz) (ohmic)."""
    return NoiseSpec()


@pytest.fixture
def high_freq_config() -> Path:
    return CONFIG_DIR / "ec2.5_ej9.0_el0.52.conf"


@pytest.fixture
def low_freq_config() -> Path:
    return CONFIG_DIR / "ec0.55_ej2.2_el0.72.conf"


@pytest.fixture
def oracle_config() -> Path:
    return CONFIG_DIR / "oracle_n2.yaml"


@pytest.fixture
def write_config(tmp_path):
    """Write a flat config file from lines and return its path."""

    def _write(*lines: str, name: str = "run.conf") -> Path:
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write
