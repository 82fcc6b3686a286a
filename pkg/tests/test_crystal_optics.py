from dataclasses import replace

import numpy as np
import pytest

from scripts.crystal_optics import (AnisotropyParams, CrystalConfig, SellmeierCoefficients, SellmeierSet, anisotropy,
                                    collinear_angle, collinear_offset, delta_kz, delta_kz_discrepancy, delta_kz_full,
                                    first_zero_radius, phase_matching, phase_matching_ring_radius, refractive_indices)
from scripts.crystal_optics.crystal import mismatch_constants
from scripts.errors import ConfigError, DispersionRangeError, DomainError, UnphasematchableError

# hand-evaluated from the BBO Sellmeier file
N_O_405 = 1.6922993831
N_E_405 = 1.5679659216
N_O_810 = 1.6610724058
ETA_28_71 = 1.6609956167
OFFSET_28_71 = 1191.309383
RING_28_71 = 1.238922e5
FIRST_ZERO_28_71 = 1.531168e5


class TestDispersion:
    def test_published_values(self):
        bbo = SellmeierSet.load()
        n_o, n_e = bbo.indices(405e-9)
        assert n_o == pytest.approx(N_O_405, abs=1e-9)
        assert n_e == pytest.approx(N_E_405, abs=1e-9)
        assert bbo.indices(810e-9)[0] == pytest.approx(N_O_810, abs=1e-9)

    def test_direct_formula(self):
        coeffs = SellmeierSet.load().ordinary
        lam = 0.6328
        expected = np.sqrt(coeffs.A + coeffs.B / (lam ** 2 - coeffs.C) - coeffs.D * lam ** 2)
        assert coeffs.index(lam) == pytest.approx(expected, rel=1e-15)

    def test_normal_dispersion_and_negative_birefringence(self, crystal):
        n_o_blue, n_e_blue = refractive_indices(405e-9, crystal)
        n_o_red, n_e_red = refractive_indices(810e-9, crystal)
        assert n_o_blue > n_o_red
        assert n_e_blue > n_e_red
        assert n_o_blue > n_e_blue and n_o_red > n_e_red

    def test_vectorized(self):
        n_o, n_e = SellmeierSet.load().indices(np.array([400e-9, 600e-9, 800e-9]))
        assert n_o.shape == n_e.shape == (3,)
        assert np.all(np.diff(n_o) < 0)

    @pytest.mark.parametrize("wavelength", [250e-9, 1500e-9])
    def test_outside_window(self, wavelength):
        with pytest.raises(DispersionRangeError):
            SellmeierSet.load().indices(wavelength)

    def test_unknown_material(self):
        with pytest.raises(ConfigError):
            SellmeierSet.load("unobtainium")


class TestCrystalConfig:
    def test_lab_units(self, crystal):
        assert crystal.thickness == pytest.approx(0.01)
        assert crystal.theta_p == pytest.approx(np.radians(28.71))
        assert crystal.signal_wavelength == pytest.approx(810e-9)
        assert crystal.n_signal == pytest.approx(N_O_810, abs=1e-9)

    @pytest.mark.parametrize("kwargs", [
        {"thickness_mm": 0.0, "theta_p_deg": 28.71},
        {"thickness_mm": 10.0, "theta_p_deg": 0.0},
        {"thickness_mm": 10.0, "theta_p_deg": 90.0},
    ])
    def test_rejects_bad_geometry(self, kwargs):
        with pytest.raises(DomainError):
            CrystalConfig.from_lab_units(**kwargs)

    def test_signal_outside_window(self):
        with pytest.raises(DispersionRangeError):
            CrystalConfig.from_lab_units(10.0, 28.71, pump_wavelength_nm=600.0)

    def test_non_degenerate_rejected(self, crystal):
        with pytest.raises(DomainError):
            replace(crystal, degenerate=False)

    def test_hashable_for_caching(self, crystal):
        same = CrystalConfig.from_lab_units(10.0, 28.71)
        assert hash(same) == hash(crystal)
        assert mismatch_constants(same) == mismatch_constants(crystal)


class TestAnisotropy:
    def test_optic_axis(self, crystal):
        params = anisotropy(crystal, 0.0)
        assert params.alpha == 0.0
        assert params.eta == pytest.approx(N_O_405, abs=1e-9)

    def test_perpendicular(self, crystal):
        params = anisotropy(crystal, np.pi / 2)
        assert params.alpha == 0.0
        assert params.gamma == 1.0
        assert params.eta == pytest.approx(N_E_405, abs=1e-9)

    def test_working_angle(self, crystal):
        params = anisotropy(crystal)
        assert params.eta == pytest.approx(ETA_28_71, abs=1e-8)
        assert N_E_405 < params.eta < N_O_405
        assert 0 < params.alpha < 0.1
        assert params.beta == pytest.approx(1.0, abs=0.1)
        assert params.gamma == pytest.approx(1.0, abs=0.1)

    def test_eta_decreases_with_angle(self, crystal):
        etas = [anisotropy(crystal, t).eta for t in np.linspace(0.0, np.pi / 2, 19)]
        assert np.all(np.diff(etas) < 0)

    def test_out_of_range(self, crystal):
        with pytest.raises(DomainError):
            anisotropy(crystal, -0.1)


class TestPhaseMatching:
    def test_collinear_angle(self, crystal):
        theta = collinear_angle(crystal)
        assert np.degrees(theta) == pytest.approx(28.65, abs=0.10)
        assert np.degrees(theta) == pytest.approx(28.670404, abs=1e-5)
        assert anisotropy(crystal, theta).eta == pytest.approx(crystal.n_signal, abs=1e-9)

    def test_collinear_mismatch_vanishes_on_axis(self, crystal):
        collinear = crystal.with_theta(collinear_angle(crystal))
        assert abs(delta_kz(0.0, 0.0, 0.0, collinear)) < 1e-2
        assert abs(phase_matching(0.0, 0.0, 0.0, collinear)) == pytest.approx(1.0, abs=1e-9)
        assert phase_matching_ring_radius(collinear) < 1e3

    def test_unphasematchable(self):
        bbo = SellmeierSet.load()
        o = bbo.ordinary
        weak = replace(bbo, extraordinary=SellmeierCoefficients(o.A - 0.001, o.B, o.C, o.D))
        config = CrystalConfig(thickness=0.01, theta_p=np.radians(28.71), pump_wavelength=405e-9, sellmeier=weak)
        with pytest.raises(UnphasematchableError):
            collinear_angle(config)

    def test_noncollinear_constants(self, crystal):
        offset, denom = mismatch_constants(crystal)
        assert offset == pytest.approx(OFFSET_28_71, rel=1e-5)
        assert collinear_offset(crystal) == offset
        assert denom == pytest.approx(2 * ETA_28_71 * 2 * np.pi / 405e-9, rel=1e-9)
        assert phase_matching_ring_radius(crystal) == pytest.approx(RING_28_71, rel=1e-5)
        assert first_zero_radius(crystal) == pytest.approx(FIRST_ZERO_28_71, rel=1e-5)

    def test_below_collinear_has_no_ring(self):
        config = CrystalConfig.from_lab_units(10.0, 28.60)
        assert collinear_offset(config) < 0
        assert phase_matching_ring_radius(config) == 0.0
        assert first_zero_radius(config) == pytest.approx(np.sqrt(2 * np.pi / 0.01 * mismatch_constants(config)[1] / 4))

    def test_symmetries(self, crystal, rng):
        rho_s, rho_i = rng.uniform(0, 2e5, size=(2, 50))
        phi = rng.uniform(-np.pi, np.pi, size=50)
        np.testing.assert_allclose(delta_kz(rho_s, rho_i, phi, crystal), delta_kz(rho_i, rho_s, phi, crystal),
                                   rtol=1e-12, atol=1e-9)
        np.testing.assert_allclose(delta_kz(rho_s, rho_i, phi, crystal), delta_kz(rho_s, rho_i, -phi, crystal),
                                   rtol=1e-12, atol=1e-9)

    def test_equal_momenta_keep_the_offset(self, crystal):
        rho = np.linspace(0.0, 2e5, 11)
        np.testing.assert_allclose(delta_kz(rho, rho, 0.0, crystal), collinear_offset(crystal), atol=1e-6)

    def test_bounded_magnitude(self, crystal, rng):
        rho_s, rho_i = rng.uniform(0, 3e5, size=(2, 200))
        phi = rng.uniform(-np.pi, np.pi, size=200)
        assert np.all(np.abs(phase_matching(rho_s, rho_i, phi, crystal)) <= 1.0 + 1e-15)

    def test_first_zero_on_the_antiparallel_ring(self, crystal):
        rho = first_zero_radius(crystal)
        assert abs(phase_matching(rho, rho, np.pi, crystal)) < 1e-12
        assert 0.5 * crystal.thickness * delta_kz(rho, rho, np.pi, crystal) == pytest.approx(-np.pi, rel=1e-10)

    def test_emission_peaks_off_axis(self, crystal):
        rho = np.linspace(0.0, 2e5, 2001)
        peak = rho[np.argmax(np.abs(phase_matching(rho, rho, np.pi, crystal)))]
        assert peak == pytest.approx(RING_28_71, rel=1e-3)


class TestFullMismatch:
    def test_reduces_to_simplified_without_anisotropy(self, crystal, rng):
        collinear = crystal.with_theta(collinear_angle(crystal))
        eta = anisotropy(collinear).eta
        params = AnisotropyParams(alpha=0.0, beta=1.0, gamma=1.0, eta=eta)
        q_s = rng.uniform(-1e5, 1e5, size=(20, 2))
        q_i = rng.uniform(-1e5, 1e5, size=(20, 2))
        full = delta_kz_full(q_s, q_i, collinear, params)
        rho_s, rho_i = np.linalg.norm(q_s, axis=1), np.linalg.norm(q_i, axis=1)
        dphi = np.arctan2(q_s[:, 1], q_s[:, 0]) - np.arctan2(q_i[:, 1], q_i[:, 0])
        np.testing.assert_allclose(full, delta_kz(rho_s, rho_i, dphi, collinear), atol=1e-4)

    def test_discrepancy_is_reported(self, crystal):
        gap = delta_kz_discrepancy(crystal, rho_max=1e5, samples=500)
        assert np.isfinite(gap) and gap > 0
        assert gap == delta_kz_discrepancy(crystal, rho_max=1e5, samples=500)
