import logging
import math

import numpy as np
import pytest

from squeezed_light.exceptions import DomainError, InvalidArgumentError
from squeezed_light.models import (
    ArmCavity,
    FixedSqueeze,
    InterferometerConfig,
    Normalization,
    OptimalFrequencyDependent,
    SqlVariant,
    SqueezeSpec,
    Susceptibility,
)
from squeezed_light.noise import (
    h_fp,
    kappa,
    noise_spectrum,
    omega_sql,
    optimal_power,
    quadrature_sum_asd,
    rpn_asd,
    shot_asd,
    sql_asd,
    total_noise_form_discrepancy,
    total_quantum_noise_asd,
)
from squeezed_light.noise.budget import NOISE_SPECTRUM_COLUMNS


class TestMichelson4kW:
    @pytest.fixture(autouse=True)
    def setup(self, michelson_4kw):
        self.config = michelson_4kw

    def test_sql_crossing_frequency(self):
        assert omega_sql(self.config) == pytest.approx(46.51, rel=1e-3)
        assert omega_sql(self.config) / (2 * math.pi) == pytest.approx(7.40, rel=1e-3)
        assert kappa(self.config, omega_sql(self.config)) == pytest.approx(1.0, rel=1e-12)

    def test_shot_noise_level(self):
        assert shot_asd(self.config, 100.0) == pytest.approx(9.874e-19, rel=1e-3)

    def test_sql_at_crossing(self):
        crossing = omega_sql(self.config)

        assert sql_asd(self.config, crossing) == pytest.approx(1.396e-18, rel=1e-3)
        assert shot_asd(self.config, crossing) == pytest.approx(rpn_asd(self.config, crossing), rel=1e-9)
        assert total_quantum_noise_asd(self.config, crossing) == pytest.approx(
            sql_asd(self.config, crossing), rel=1e-9)

    def test_total_noise_never_beats_sql(self):
        omegas = 2 * math.pi * np.logspace(-1, 4, 10_000)
        for omega in omegas:
            assert total_quantum_noise_asd(self.config, omega) >= sql_asd(self.config, omega) * (1 - 1e-12)

    def test_quadrature_sum_agrees_without_arm_cavity(self):
        for omega in (1.0, 46.5, 1e3, 1e5):
            assert quadrature_sum_asd(self.config, omega) == pytest.approx(
                total_quantum_noise_asd(self.config, omega), rel=1e-12)
            assert total_noise_form_discrepancy(self.config, omega) < 1e-12

    def test_agreeing_forms_are_not_reported(self, caplog):
        with caplog.at_level(logging.INFO, logger='squeezed_light.noise.budget'):
            for omega in (1.0, 46.5, 1e3, 1e5):
                total_noise_form_discrepancy(self.config, omega)

        assert 'differ' not in caplog.text

    def test_rpn_scales_with_power(self):
        brighter = InterferometerConfig(power_w=16_000.0, wavelength_m=1550e-9, arm_length_m=600.0,
                                        mirror_mass_kg=0.1)

        assert rpn_asd(brighter, 50.0) == pytest.approx(2 * rpn_asd(self.config, 50.0))
        assert shot_asd(brighter, 50.0) == pytest.approx(shot_asd(self.config, 50.0) / 2)

    def test_pendulum_approaches_free_mass(self):
        omega_m = self.config.pendulum.omega_m
        for factor in (11.0, 30.0, 1000.0):
            omega = factor * omega_m
            assert rpn_asd(self.config, omega, susceptibility=Susceptibility.PENDULUM) == pytest.approx(
                rpn_asd(self.config, omega), rel=1e-2)

    def test_pendulum_resonance_is_finite(self):
        omega_m = self.config.pendulum.omega_m
        on_resonance = rpn_asd(self.config, omega_m, susceptibility=Susceptibility.PENDULUM)

        assert math.isfinite(on_resonance)
        assert on_resonance > 1e6 * rpn_asd(self.config, omega_m)
        assert math.isfinite(rpn_asd(self.config, 0.0, susceptibility=Susceptibility.PENDULUM))

    def test_strain_normalization(self):
        omega = 200.0
        for func in (shot_asd, rpn_asd):
            assert func(self.config, omega, Normalization.STRAIN) == pytest.approx(
                func(self.config, omega) / 600.0)
        assert sql_asd(self.config, omega, normalization=Normalization.STRAIN) == pytest.approx(
            sql_asd(self.config, omega) / 600.0)

    @pytest.mark.parametrize('func', [kappa, sql_asd, rpn_asd, total_quantum_noise_asd, optimal_power])
    def test_zero_frequency_is_a_domain_error(self, func):
        with pytest.raises(DomainError):
            func(self.config, 0.0)

    def test_negative_frequency_is_rejected(self):
        with pytest.raises(InvalidArgumentError):
            shot_asd(self.config, -1.0)


class TestSqueezedInjection:
    @pytest.fixture(autouse=True)
    def setup(self, michelson_1mw):
        self.config = michelson_1mw
        self.omegas = 2 * math.pi * np.logspace(0, 4, 200)

    def test_optimal_injection_coerces_squeeze_parameter(self):
        injection = OptimalFrequencyDependent(r='1.5')

        assert isinstance(injection.r, float)
        assert injection.r == 1.5

    @pytest.mark.parametrize('r', [-0.1, float('nan'), float('inf')])
    def test_optimal_injection_rejects_bad_squeeze_parameter(self, r):
        with pytest.raises(InvalidArgumentError):
            OptimalFrequencyDependent(r=r)

    def test_optimal_injection_lowers_psd_by_squeeze_factor(self):
        injection = OptimalFrequencyDependent(r=SqueezeSpec.from_db(10.0).r)
        for omega in self.omegas:
            ratio = (total_quantum_noise_asd(self.config, omega, injection)
                     / total_quantum_noise_asd(self.config, omega)) ** 2
            assert ratio == pytest.approx(0.1, rel=1e-9)

    def test_optimal_injection_beats_sql(self):
        injection = OptimalFrequencyDependent(r=SqueezeSpec.from_db(10.0).r)
        crossing = omega_sql(self.config)

        assert total_quantum_noise_asd(self.config, crossing, injection) < sql_asd(self.config, crossing)

    def test_lossy_optimal_injection(self):
        injection = OptimalFrequencyDependent(r=SqueezeSpec.from_db(10.0).r, eta=math.sqrt(0.9))
        omega = omega_sql(self.config)
        ratio = (total_quantum_noise_asd(self.config, omega, injection)
                 / total_quantum_noise_asd(self.config, omega)) ** 2

        assert ratio == pytest.approx(0.9 * 0.1 + 0.1, rel=1e-9)

    def test_fixed_45_degree_squeezing_hurts_at_high_frequency(self):
        injection = FixedSqueeze(SqueezeSpec.from_db(10.0, math.pi / 4))
        crossing = omega_sql(self.config)
        for omega in crossing * np.logspace(1, 3, 50):
            assert total_quantum_noise_asd(self.config, omega, injection) > total_quantum_noise_asd(
                self.config, omega)

    def test_phase_squeezing_matches_closed_form(self):
        r = SqueezeSpec.from_db(10.0).r
        injection = FixedSqueeze(SqueezeSpec(r=r, theta=math.pi / 2))
        for omega in (10.0, 1e3, 1e5):
            expected = math.hypot(shot_asd(self.config, omega) * math.exp(-r),
                                  rpn_asd(self.config, omega) * math.exp(r))
            assert total_quantum_noise_asd(self.config, omega, injection) == pytest.approx(expected, rel=1e-9)

    def test_optimal_power_sets_sql_frequency(self):
        omega = 2 * math.pi * 100.0
        power = optimal_power(self.config, omega)
        tuned = InterferometerConfig(power_w=power, wavelength_m=1550e-9, arm_length_m=600.0, mirror_mass_kg=1.0)

        assert omega_sql(tuned) == pytest.approx(omega)


class TestArmCavities:
    @pytest.fixture(autouse=True)
    def setup(self):
        self.config = InterferometerConfig(power_w=1e5, wavelength_m=1064e-9, arm_length_m=600.0,
                                           mirror_mass_kg=10.0, arm_cavity=ArmCavity(t_fp=0.01))

    def test_h_fp_limits(self):
        gamma = self.config.gamma_fp

        assert h_fp(self.config, 0.0) == pytest.approx(0.01 / 4)
        assert h_fp(self.config, gamma) == pytest.approx(math.sqrt(2) * 0.01 / 4)

    def test_shot_noise_rises_above_cavity_pole(self):
        gamma = self.config.gamma_fp

        assert shot_asd(self.config, 2e4 * gamma) / shot_asd(self.config, 1e4 * gamma) == pytest.approx(2.0, rel=1e-6)

    def test_sql_variants_agree_at_unit_response(self):
        omega = math.sqrt((299792458.0 / 600.0) ** 2 - self.config.gamma_fp ** 2)

        assert h_fp(self.config, omega) == pytest.approx(1.0)
        assert sql_asd(self.config, omega, SqlVariant.WITH_ARM_CAVITIES) == pytest.approx(
            sql_asd(self.config, omega), rel=1e-9)

    def test_form_discrepancy_is_reported(self, caplog):
        with caplog.at_level(logging.INFO, logger='squeezed_light.noise.budget'):
            discrepancy = total_noise_form_discrepancy(self.config, 2 * math.pi * 100.0)

        assert discrepancy > 1e-3
        assert 'differ' in caplog.text

    def test_h_fp_needs_arm_cavity(self, michelson_1mw):
        with pytest.raises(InvalidArgumentError):
            h_fp(michelson_1mw, 1.0)


class TestNoiseSpectrum:
    def test_columns_and_rows(self, michelson_4kw):
        f_hz = np.logspace(0, 4, 25)
        frame = noise_spectrum(michelson_4kw, f_hz)

        assert list(frame.columns) == NOISE_SPECTRUM_COLUMNS
        assert len(frame) == 25
        assert np.allclose(frame['total'], frame['total_injected'])
        assert np.all(frame['total'] >= frame['sql'] * (1 - 1e-12))

    def test_injected_column_uses_injection(self, michelson_1mw):
        injection = OptimalFrequencyDependent(r=SqueezeSpec.from_db(10.0).r)
        frame = noise_spectrum(michelson_1mw, [1.0, 10.0, 100.0], injection)

        assert np.allclose((frame['total_injected'] / frame['total']) ** 2, 0.1)

    def test_rows_match_pointwise_budget(self, michelson_4kw):
        f_hz = [2.0, 7.4, 300.0]
        frame = noise_spectrum(michelson_4kw, f_hz, normalization=Normalization.STRAIN)

        for row, f in zip(frame.itertuples(), f_hz):
            omega = 2 * math.pi * f
            assert row.shot == pytest.approx(shot_asd(michelson_4kw, omega, Normalization.STRAIN), rel=1e-12)
            assert row.rpn == pytest.approx(rpn_asd(michelson_4kw, omega, Normalization.STRAIN), rel=1e-12)
            assert row.total == pytest.approx(
                total_quantum_noise_asd(michelson_4kw, omega, normalization=Normalization.STRAIN), rel=1e-12)

    def test_zero_frequency_rejected(self, michelson_4kw):
        with pytest.raises(DomainError):
            noise_spectrum(michelson_4kw, [0.0, 1.0, 2.0])

    @pytest.mark.parametrize('grid', [[], [1.0, 1.0], [3.0, 2.0]])
    def test_malformed_grid_rejected(self, michelson_4kw, grid):
        with pytest.raises(InvalidArgumentError):
            noise_spectrum(michelson_4kw, grid)
