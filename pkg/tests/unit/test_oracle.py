"""Unit tests for the exact small-N full-circuit oracle."""

import math

import numpy as np
import pytest
from rich.console import Console
from scipy.linalg import eigh_tridiagonal

from src.models.circuit import CosineFit, DispersionScan
from src.models.qubit import LAMBDA_BROADENED
from src.oracle.circuit import (
    CircuitDimensionError,
    SingularCapacitanceError,
    build_capacitance_matrix,
    build_full_hamiltonian,
    charging_to_capacitance,
    circuit_model,
    effective_spec,
    exact_levels,
)
from src.oracle.reporter import OracleReporter
from src.oracle.scan import (
    TruncationConvergenceError,
    compare_with_effective,
    converged_scan,
    dispersion_scan,
    fit_cosine,
    write_scan_csv,
)


def single_junction_levels(e_j: float, e_c: float, offset: float, n_max: int, count: int = 2) -> np.ndarray:
    """Lowest levels of 4E_C(n + Q/2)^2 + E_J(1 - cos theta) in the charge basis."""
    n = np.arange(-n_max, n_max + 1)
    diagonal = 4 * e_c * (n + offset / 2) ** 2 + e_j
    off_diagonal = np.full(2 * n_max, -e_j / 2)
    return eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True, select="i", select_range=(0, count - 1))


@pytest.fixture(scope="module")
def matched_n2():
    """Stiff N = 2 array where the single-mode model should hold."""
    return circuit_model(n=2, e_ja=50.0, e_ca=1.0, e_jb=1.0, e_cb=2.0)


@pytest.fixture(scope="module")
def dispersive_n2():
    """Softer N = 2 array with visible charge dispersion."""
    return circuit_model(n=2, e_ja=10.0, e_ca=1.0, e_jb=1.0, e_cb=2.0)


class TestCapacitanceMatrix:
    """Tests for the capacitance matrix over (tau, Theta_1..Theta_N)."""

    def test_without_ground_capacitance(self):
        """Only the Theta block is populated; tau decouples."""
        matrix = build_capacitance_matrix(2, c_a=0.5, c_b=0.25)
        expected = np.array([[0.0, 0.0, 0.0], [0.0, 0.75, 0.25], [0.0, 0.25, 0.75]])
        np.testing.assert_allclose(matrix, expected)

    def test_with_ground_capacitance(self):
        """Ground capacitors couple tau and keep the matrix positive definite."""
        matrix = build_capacitance_matrix(3, c_a=1.0, c_b=0.5, cd_a=0.1, cd_b=0.1)
        assert matrix[0, 0] == pytest.approx(2 * 0.1 + 2 * 0.1)
        assert matrix[0, 1] == pytest.approx(2 * 0.1 + 0.1)
        np.testing.assert_allclose(matrix, matrix.T)
        assert np.all(np.linalg.eigvalsh(matrix) > 0)

    def test_rejects_negative(self):
        """Capacitances are non-negative."""
        with pytest.raises(ValueError, match="non-negative"):
            build_capacitance_matrix(2, c_a=-1.0, c_b=0.5)

    def test_charging_to_capacitance(self):
        """C = 1/(2 E_C), and an infinite charging energy removes the capacitor."""
        assert charging_to_capacitance(2.0) == 0.25
        assert charging_to_capacitance(math.inf) == 0.0
        with pytest.raises(ValueError):
            charging_to_capacitance(0.0)


class TestFullCircuitModel:
    """Tests for FullCircuitModel construction."""

    def test_sweet_spot_offsets_by_default(self, matched_n2):
        """Q_tau = 0 and Q_j = 1/2."""
        np.testing.assert_allclose(matched_n2.charge_offsets, [0.0, 0.5, 0.5])
        assert matched_n2.dimension == 17**2
        assert not matched_n2.tau_coupled

    def test_rejects_wrong_offset_count(self):
        """One offset per island including tau."""
        with pytest.raises(ValueError, match="charge offsets"):
            circuit_model(n=2, e_ja=10.0, e_ca=1.0, e_jb=1.0, e_cb=2.0, charge_offsets=[0.0, 0.5])

    def test_to_dict(self, matched_n2):
        """Serialized model carries N, energies and truncation."""
        data = matched_n2.to_dict()
        assert data["N"] == 2
        assert data["EJa_GHz"] == 50.0
        assert data["n_max"] == 8
        assert len(data["capacitance_matrix"]) == 3


class TestHamiltonian:
    """Tests for the charge-basis Hamiltonian and its spectrum."""

    def test_hermitian(self, dispersive_n2):
        """Real and symmetric at half flux."""
        hamiltonian = build_full_hamiltonian(dispersive_n2).toarray()
        np.testing.assert_allclose(hamiltonian, hamiltonian.conj().T, atol=1e-12)
        assert np.isrealobj(hamiltonian)

    def test_complex_away_from_symmetric_flux(self):
        """A generic flux gives a complex Hermitian matrix with real levels."""
        model = circuit_model(n=2, e_ja=10.0, e_ca=1.0, e_jb=1.0, e_cb=2.0, flux_phi=0.7 * math.pi)
        hamiltonian = build_full_hamiltonian(model).toarray()
        assert np.iscomplexobj(hamiltonian)
        np.testing.assert_allclose(hamiltonian, hamiltonian.conj().T, atol=1e-12)
        levels = exact_levels(model)
        assert levels[0] < levels[1]

    def test_separable_limit(self):
        """Without the black sheep the junctions decouple into independent charge qubits."""
        model = circuit_model(n=2, e_ja=5.0, e_ca=1.0, e_jb=0.0, e_cb=math.inf, n_max=8)
        single = single_junction_levels(5.0, 1.0, 0.5, 8)
        levels = exact_levels(model, n_levels=2)
        assert levels[0] == pytest.approx(2 * single[0], abs=1e-9)
        assert levels[1] == pytest.approx(single[0] + single[1], abs=1e-9)

    def test_truncation_converged(self, dispersive_n2):
        """Raising the charge cutoff from 10 to 12 leaves the two lowest levels unchanged."""
        coarse = exact_levels(dispersive_n2.with_truncation(10))
        fine = exact_levels(dispersive_n2.with_truncation(12))
        np.testing.assert_allclose(coarse, fine, atol=1e-8)

    def test_periodic_in_two_e(self, dispersive_n2):
        """Shifting Q_1 by 2e leaves the spectrum unchanged."""
        base = exact_levels(dispersive_n2.with_offsets([0.0, 0.3, 0.5]))
        shifted = exact_levels(dispersive_n2.with_offsets([0.0, 2.3, 0.5]))
        np.testing.assert_allclose(base, shifted, atol=1e-8)

    @pytest.mark.parametrize("n,n_max", [(4, 4), (2, 13)])
    def test_dimension_guard(self, n, n_max):
        """N > 3 or n_max > 12 is refused before any allocation."""
        model = circuit_model(n=n, e_ja=10.0, e_ca=1.0, e_jb=1.0, e_cb=2.0, n_max=n_max)
        with pytest.raises(CircuitDimensionError):
            build_full_hamiltonian(model)

    def test_singular_capacitance(self):
        """With no capacitors at all the kinetic term is undefined."""
        model = circuit_model(n=2, e_ja=10.0, e_ca=math.inf, e_jb=1.0, e_cb=math.inf)
        with pytest.raises(SingularCapacitanceError):
            exact_levels(model)

    def test_too_many_levels(self):
        """Cannot request more levels than states."""
        model = circuit_model(n=1, e_ja=1.0, e_ca=1.0, e_jb=1.0, e_cb=2.0, n_max=1)
        with pytest.raises(ValueError, match="exceeds"):
            exact_levels(model, n_levels=3)


class TestEffectiveSpec:
    """Tests for matching a full-circuit model to single-mode parameters."""

    def test_matched_parameters(self, matched_n2):
        """E_C = e^2/2(C^a/N + C^b), E_L = E_J^a/N, script E_C^a = N e^2/2C^a."""
        spec, scales = effective_spec(matched_n2)
        assert spec.e_c == pytest.approx(1.0)
        assert spec.e_l == pytest.approx(25.0)
        assert spec.e_j == 1.0
        assert scales.e_cb == pytest.approx(2.0)
        assert scales.script_e_ca == pytest.approx(2.0)

    def test_requires_black_sheep(self):
        """No black-sheep junction means no fluxonium."""
        model = circuit_model(n=2, e_ja=5.0, e_ca=1.0, e_jb=0.0, e_cb=math.inf)
        with pytest.raises(ValueError, match="black-sheep"):
            effective_spec(model)


class TestFitCosine:
    """Tests for the cosine fit."""

    def test_recovers_amplitude(self):
        """A pure cosine is recovered exactly with R^2 = 1."""
        charges = np.linspace(0, 2, 21)
        energies = 3.0 - 0.5 * 0.02 * np.cos(np.pi * charges)
        fit = fit_cosine(charges, energies)
        assert fit.eps == pytest.approx(0.02)
        assert fit.offset == pytest.approx(3.0)
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.peak_to_peak == pytest.approx(0.02)

    def test_flat_data(self):
        """A constant curve fits with zero amplitude."""
        fit = fit_cosine([0.0, 0.5, 1.0], [1.0, 1.0, 1.0])
        assert fit.eps == pytest.approx(0.0, abs=1e-14)
        assert fit.r_squared == 1.0

    def test_rejects_short_input(self):
        """Three points minimum."""
        with pytest.raises(ValueError, match="at least 3"):
            fit_cosine([0.0, 1.0], [0.0, 1.0])


class TestDispersionScan:
    """Tests for offset-charge scans of the exact spectrum."""

    @pytest.fixture(scope="class")
    def scan(self, dispersive_n2):
        return dispersion_scan(dispersive_n2, island=1, points=21)

    def test_cosine_shape(self, scan):
        """Both levels follow a single cosine in Q_1."""
        assert fit_cosine(scan.charges, scan.e0).r_squared > 0.99
        assert fit_cosine(scan.charges, scan.e1).r_squared > 0.99

    def test_endpoints_periodic(self, scan):
        """Q_1 = 0 and Q_1 = 2 give the same energies."""
        assert scan.charges[0] == 0.0
        assert scan.charges[-1] == 2.0
        assert scan.e0[0] == pytest.approx(scan.e0[-1], abs=1e-8)
        assert scan.e1[0] == pytest.approx(scan.e1[-1], abs=1e-8)

    def test_stiffer_array_disperses_less(self, scan):
        """Doubling E_J^a suppresses phase slips and the fitted amplitude."""
        stiff = circuit_model(n=2, e_ja=20.0, e_ca=1.0, e_jb=1.0, e_cb=2.0)
        stiff_scan = dispersion_scan(stiff, island=1, points=21)
        for soft_e, stiff_e in ((scan.e0, stiff_scan.e0), (scan.e1, stiff_scan.e1)):
            assert abs(fit_cosine(stiff_scan.charges, stiff_e).eps) < abs(fit_cosine(scan.charges, soft_e).eps)

    def test_rejects_bad_island(self, dispersive_n2):
        """Islands are numbered 1..N."""
        with pytest.raises(ValueError, match="island"):
            dispersion_scan(dispersive_n2, island=3)

    def test_write_scan_csv(self, tmp_path):
        """Scans export as Q_e, E0_GHz, E1_GHz columns."""
        scan = DispersionScan(island=1, charges=[0.0, 1.0], e0=[1.0, 1.5], e1=[2.0, 2.5])
        path = write_scan_csv(scan, tmp_path / "scan.csv")
        assert path.read_text(encoding="utf-8").splitlines() == ["Q_e,E0_GHz,E1_GHz", "0.0,1.0,2.0", "1.0,1.5,2.5"]


class TestConvergedScan:
    """Tests for raising the charge truncation until the fitted dispersion settles."""

    def test_settles_immediately_when_soft(self, dispersive_n2):
        """A soft array is already converged at n_max = 8; the finer scan is kept."""
        converged = converged_scan(dispersive_n2, points=9)
        assert converged.truncations == [8, 10]
        assert converged.model.n_max == 10
        assert converged.fit0.eps == pytest.approx(2.3014e-3, rel=1e-2)
        assert converged.fit1.eps == pytest.approx(-3.2361e-2, rel=1e-2)

    def test_stiff_array_needs_larger_truncation(self, matched_n2):
        """At E_J^a/E_C^a = 50, n_max = 8 is truncation noise and 10 -> 12 agrees."""
        converged = converged_scan(matched_n2, points=9)
        assert converged.truncations == [8, 10, 12]
        assert converged.fit0.r_squared > 0.99
        assert converged.fit1.r_squared > 0.99

    def test_unsettled_at_cap(self, dispersive_n2, mocker):
        """Amplitudes that keep moving up to n_max = 12 raise with the truncations tried."""
        drifting = iter(CosineFit(eps=float(k), offset=0.0, r_squared=1.0) for k in range(1, 100))
        mocker.patch("src.oracle.scan.fit_cosine", side_effect=lambda charges, energies: next(drifting))
        with pytest.raises(TruncationConvergenceError, match="n_max=12") as excinfo:
            converged_scan(dispersive_n2, points=3)
        assert excinfo.value.truncations == [8, 10, 12]

    def test_start_at_cap_compares_one_step_below(self, dispersive_n2):
        """Starting at the cap still compares two truncations."""
        converged = converged_scan(dispersive_n2.with_truncation(12), points=5)
        assert converged.truncations == [10, 12]

    def test_rejects_oversized_start(self, dispersive_n2):
        """A start beyond the cap is a dimension error."""
        with pytest.raises(CircuitDimensionError):
            converged_scan(dispersive_n2.with_truncation(13), points=3)


class TestCompareWithEffective:
    """Tests for the exact-versus-effective comparison."""

    @pytest.fixture(scope="class")
    def dispersive_report(self, dispersive_n2):
        return compare_with_effective(dispersive_n2, scan_points=21)

    @pytest.fixture(scope="class")
    def matched_report(self, matched_n2):
        return compare_with_effective(matched_n2, scan_points=9)

    @pytest.fixture(scope="class")
    def matched_broadened_report(self, matched_n2):
        return compare_with_effective(matched_n2, scan_points=9, lam=LAMBDA_BROADENED)

    @pytest.fixture(scope="class")
    def three_junction_report(self):
        model = circuit_model(n=3, e_ja=50.0, e_ca=1.0, e_jb=1.0, e_cb=1.5)
        return compare_with_effective(model, scan_points=5, lam=LAMBDA_BROADENED)

    def test_f01_agreement(self, matched_report, three_junction_report):
        """Stiff small arrays reproduce the single-mode f01 within 5%."""
        assert matched_report["f01_relative_error"] <= 0.05
        assert three_junction_report["f01_relative_error"] <= 0.05

    def test_converged_exact_dispersion(self, matched_report):
        """At ratio 50 the exact N = 2 dispersion is a clean cosine: eps0 ~ 9.82e-9, eps1 ~ -4.18e-7 GHz."""
        assert matched_report["model"]["n_max"] == 12
        assert matched_report["truncations"] == [8, 10, 12]
        assert matched_report["eps0_r_squared"] > 0.99
        assert matched_report["eps1_r_squared"] > 0.99
        assert matched_report["eps0_fit_GHz"] == pytest.approx(9.82e-9, rel=1e-2)
        assert matched_report["eps1_fit_GHz"] == pytest.approx(-4.183e-7, rel=1e-2)

    def test_unit_lambda_underestimates_two_junctions(self, matched_report):
        """With harmonic wavefunctions tight binding falls short of the exact N = 2 dispersion by 50-300x."""
        assert 50 <= matched_report["eps0_ratio"] <= 300
        assert 50 <= matched_report["eps1_ratio"] <= 300
        assert not matched_report["within_factor_two"]
        assert matched_report["same_sign_eps_diff"]

    def test_broadened_lambda_closes_the_gap(self, matched_broadened_report):
        """Broadened wavefunctions bring both N = 2 ratios to between 1 and 4."""
        assert 1 <= matched_broadened_report["eps0_ratio"] <= 4
        assert 1 <= matched_broadened_report["eps1_ratio"] <= 4
        assert matched_broadened_report["effective"]["lambda"] == pytest.approx(LAMBDA_BROADENED)

    def test_three_junctions_within_factor_two(self, three_junction_report):
        """With broadened wavefunctions the N = 3 fits agree with tight binding within a factor 2."""
        assert three_junction_report["truncations"] == [8, 10, 12]
        assert three_junction_report["eps0_r_squared"] > 0.99
        assert three_junction_report["eps1_r_squared"] > 0.99
        assert three_junction_report["within_factor_two"]

    def test_dispersion_signs(self, dispersive_report):
        """Exact fits and tight binding agree on eps_0 > 0 and eps_1 < 0 at half flux."""
        assert dispersive_report["eps0_fit_GHz"] > 0
        assert dispersive_report["eps1_fit_GHz"] < 0
        assert dispersive_report["eps0_tight_binding_GHz"] > 0
        assert dispersive_report["eps1_tight_binding_GHz"] < 0
        assert dispersive_report["same_sign_eps_diff"]

    def test_report_fields(self, dispersive_report):
        """The report carries both f01 values, both fits, the truncations and the agreement flags."""
        for key in (
            "model",
            "effective",
            "truncations",
            "f01_exact_GHz",
            "f01_effective_GHz",
            "eps0_ratio",
            "eps1_ratio",
            "eps0_r_squared",
            "eps1_r_squared",
        ):
            assert key in dispersive_report
        assert isinstance(dispersive_report["within_factor_two"], bool)
        assert dispersive_report["eps0_ratio"] == pytest.approx(
            dispersive_report["eps0_fit_GHz"] / dispersive_report["eps0_tight_binding_GHz"]
        )


class TestOracleReporter:
    """Tests for OracleReporter."""

    @pytest.fixture
    def report(self):
        return {
            "model": {"N": 2, "n_max": 8, "dimension": 289},
            "f01_exact_GHz": 1.01,
            "f01_effective_GHz": 1.0,
            "f01_relative_error": 0.01,
            "eps0_fit_GHz": 1e-3,
            "eps1_fit_GHz": -2e-3,
            "eps0_tight_binding_GHz": 1.5e-3,
            "eps1_tight_binding_GHz": -2.5e-3,
            "eps0_ratio": 1e-3 / 1.5e-3,
            "eps1_ratio": math.inf,
            "eps0_r_squared": 0.999,
            "eps1_r_squared": 0.998,
        }

    def test_display(self, report):
        """The panel shows both f01 values and the tolerance verdict."""
        console = Console(record=True, width=120)
        OracleReporter(console=console).display(report)
        output = console.export_text()
        assert "N = 2" in output
        assert "within 5%" in output
        assert "Charge Dispersion" in output
        assert "∞" in output

    def test_export_json(self, report, tmp_path):
        """Infinite ratios are written as the inf token."""
        console = Console(record=True, width=120)
        path = OracleReporter(console=console).export_json(report, tmp_path / "oracle.json")
        text = path.read_text(encoding="utf-8")
        assert '"eps1_ratio": "inf"' in text
        assert "exported" in console.export_text()
