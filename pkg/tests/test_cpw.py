import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import integrate, special

from core.units import epsilon_0, mu_0, speed_of_light
from schemas.cpw import CpwGeometry
from services.cpw import (
    ellipk,
    line_params,
    mode_wavelength,
    quarter_wave_frequency,
    size_ratio,
    strip_lc,
    total_length,
)
from services.exceptions import DomainError


class TestEllipk:
    def test_zero_modulus(self):
        assert ellipk(0.0) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_strip_modulus(self):
        assert ellipk(10.0 / 22.0) == pytest.approx(1.66297, abs=1e-5)

    def test_matches_quadrature(self):
        rng = np.random.Generator(np.random.PCG64(7))
        for k in rng.uniform(0.0, 0.99, size=100):
            integral, _ = integrate.quad(
                lambda t: 1.0 / math.sqrt(1.0 - (k * math.sin(t)) ** 2), 0.0, math.pi / 2, epsabs=0.0, epsrel=1e-13, limit=200
            )
            assert ellipk(k) == pytest.approx(integral, rel=1e-11)

    def test_matches_scipy_parameter_convention(self):
        for k in np.linspace(0.0, 0.99, 12):
            assert ellipk(k) == pytest.approx(special.ellipk(k * k), rel=1e-12)

    def test_near_one_is_finite(self):
        value = ellipk(0.99999)
        assert math.isfinite(value) and value > 6.0

    @pytest.mark.parametrize("k", [1.0, -0.1, 1.5, float("nan")])
    def test_outside_domain(self, k):
        with pytest.raises(DomainError):
            ellipk(k)


class TestLineParams:
    def test_strip_values(self, reference_geometry):
        params = line_params(geom=reference_geometry)
        assert reference_geometry.modulus == pytest.approx(0.45455, abs=1e-5)
        assert params.eps_eff == pytest.approx(6.45)
        assert params.capacitance_per_length * 1e12 == pytest.approx(169.4, abs=0.1)
        assert params.inductance_per_length * 1e9 == pytest.approx(423.6, abs=0.1)
        assert params.impedance == pytest.approx(50.0, abs=0.1)

    @pytest.mark.parametrize(
        "width, gap, eps_r",
        [(10e-6, 6e-6, 11.9), (2e-6, 30e-6, 9.8), (50e-6, 1e-6, 1.0), (15e-6, 7.5e-6, 4.2)],
    )
    def test_lc_product(self, width, gap, eps_r):
        geom = CpwGeometry(width=width, gap=gap, length=1e-3, eps_r=eps_r)
        params = line_params(geom=geom)
        expected = mu_0 * epsilon_0 * geom.effective_permittivity
        product = params.inductance_per_length * params.capacitance_per_length
        assert product == pytest.approx(expected, rel=1e-12)
        assert params.phase_velocity == pytest.approx(speed_of_light / math.sqrt(params.eps_eff), rel=1e-9)

    def test_eps_eff_override(self, reference_geometry):
        override = CpwGeometry(width=10e-6, gap=6e-6, length=2000e-6, eps_r=1.0, eps_eff=6.45)
        assert line_params(geom=override).capacitance_per_length == pytest.approx(
            line_params(geom=reference_geometry).capacitance_per_length, rel=1e-12
        )


class TestStripLC:
    def test_strip_values(self, reference_geometry):
        lc = strip_lc(geom=reference_geometry)
        assert lc.inductance * 1e9 == pytest.approx(0.8473, abs=2e-4)
        assert lc.capacitance * 1e12 == pytest.approx(0.3387, abs=2e-4)

    def test_linear_in_length(self, reference_geometry):
        single = strip_lc(geom=reference_geometry)
        double = strip_lc(geom=reference_geometry.model_copy(update={"length": 2 * reference_geometry.length}))
        assert double.inductance == 2 * single.inductance
        assert double.capacitance == 2 * single.capacitance

    def test_zero_length_rejected(self):
        with pytest.raises(ValidationError):
            CpwGeometry(width=10e-6, gap=6e-6, length=0.0, eps_r=11.9)


class TestSizeRatio:
    def test_largest_resonator(self):
        l_tot = total_length(strip_length=2000e-6, ppc_area=14221e-12)
        assert l_tot == pytest.approx(2.119e-3, abs=1e-6)
        ratio = size_ratio(l_tot=l_tot, wavelength=mode_wavelength(f_r=1099.1e6, eps_eff=6.45))
        assert ratio == pytest.approx(0.0197, abs=5e-5)

    def test_vacuum_wavelength(self):
        assert mode_wavelength(f_r=speed_of_light, eps_eff=1.0) == pytest.approx(1.0, rel=1e-15)

    def test_quarter_wave_limit(self, reference_geometry):
        f_quarter = quarter_wave_frequency(geom=reference_geometry)
        wavelength = mode_wavelength(f_r=f_quarter, eps_eff=reference_geometry.effective_permittivity)
        assert size_ratio(l_tot=reference_geometry.length, wavelength=wavelength) == pytest.approx(0.25, rel=1e-12)

    @pytest.mark.parametrize("f_r, eps_eff", [(0.0, 6.45), (-1.0, 6.45), (1e9, 0.5)])
    def test_invalid_wavelength_inputs(self, f_r, eps_eff):
        with pytest.raises(DomainError):
            mode_wavelength(f_r=f_r, eps_eff=eps_eff)

    def test_invalid_ratio_inputs(self):
        with pytest.raises(DomainError):
            size_ratio(l_tot=0.0, wavelength=1.0)
