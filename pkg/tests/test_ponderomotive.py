import math

import numpy as np
import pytest

from squeezed_light.exceptions import InvalidArgumentError
from squeezed_light.gaussian import squeezed_vacuum
from squeezed_light.models import SqueezeSpec
from squeezed_light.noise import (
    optimal_input_angle,
    optimal_readout_angle,
    ponderomotive_squeezing_db,
    ponderomotive_transform,
    readout_signal_gain,
    readout_snr,
    readout_variance_vs_lo_angle,
)

V45 = np.array([[5.05, 4.95], [4.95, 5.05]])


def test_vacuum_at_unit_coupling():
    assert np.allclose(ponderomotive_transform(np.eye(2), 1.0), [[1.0, -1.0], [-1.0, 2.0]])


def test_squeezed_input_at_unit_coupling():
    assert np.allclose(ponderomotive_transform(V45, 1.0), [[5.05, -0.1], [-0.1, 0.2]], atol=1e-12)


def test_zero_coupling_is_identity():
    assert np.allclose(ponderomotive_transform(V45, 0.0), V45)


@pytest.mark.parametrize('k', [0.1, 1.0, 7.0])
def test_transform_preserves_determinant(k):
    assert np.linalg.det(ponderomotive_transform(V45, k)) == pytest.approx(np.linalg.det(V45))


def test_ponderomotive_squeezing_at_unit_coupling():
    db, angle = ponderomotive_squeezing_db(1.0)

    assert db == pytest.approx(-10 * math.log10((3 - math.sqrt(5)) / 2))
    assert db == pytest.approx(4.18, abs=0.01)
    assert math.degrees(angle) == pytest.approx(-58.28, abs=0.05)


def test_ponderomotive_squeezing_grows_with_coupling():
    levels = [ponderomotive_squeezing_db(k)[0] for k in (0.5, 1.0, 2.0, 5.0)]

    assert levels == sorted(levels)
    assert ponderomotive_squeezing_db(0.0)[0] == pytest.approx(0.0, abs=1e-12)


def test_optimal_input_angle_values():
    assert optimal_input_angle(0.0) == pytest.approx(math.pi / 2)
    assert optimal_input_angle(1.0) == pytest.approx(math.pi / 4)
    assert optimal_input_angle(1e6) == pytest.approx(0.0, abs=1e-5)


@pytest.mark.parametrize('k', [0.3, 1.0, 2.0])
def test_optimal_input_angle_minimizes_output_variance(k):
    r = 1.0
    angles = np.linspace(0, math.pi, 2001)
    variances = [ponderomotive_transform(squeezed_vacuum(SqueezeSpec(r=r, theta=a)).cov, k)[1, 1] for a in angles]
    best = ponderomotive_transform(squeezed_vacuum(SqueezeSpec(r=r, theta=optimal_input_angle(k))).cov, k)[1, 1]

    assert best == pytest.approx((1 + k ** 2) * math.exp(-2 * r), rel=1e-9)
    assert best <= min(variances) * (1 + 1e-12)


def test_readout_variance_at_phase_quadrature():
    out = ponderomotive_transform(np.eye(2), 1.0)

    assert readout_variance_vs_lo_angle(out, math.pi / 2) == pytest.approx(2.0)
    assert readout_variance_vs_lo_angle(out, 0.0) == pytest.approx(1.0)


def test_readout_signal_gain():
    assert readout_signal_gain(math.pi / 2) == pytest.approx(1.0)
    assert readout_signal_gain(0.0) == pytest.approx(0.0)
    assert readout_signal_gain(-math.pi / 6) == pytest.approx(0.5)


def test_shot_noise_limited_readout_has_unit_snr():
    assert readout_snr(np.eye(2), 0.0, math.pi / 2) == pytest.approx(1.0)


def test_variational_readout_evades_back_action():
    k = 1.0
    zetas = np.radians(np.linspace(1, 179, 1781))
    snr = np.array([readout_snr(np.eye(2), k, z) for z in zetas])

    assert math.degrees(zetas[np.argmax(snr)]) == pytest.approx(45.0, abs=0.2)
    assert optimal_readout_angle(k) == pytest.approx(math.pi / 4)
    assert readout_snr(np.eye(2), k, optimal_readout_angle(k)) == pytest.approx(1.0)
    assert readout_snr(np.eye(2), k, math.pi / 2) == pytest.approx(1 / math.sqrt(2))


def test_negative_coupling_raises():
    with pytest.raises(InvalidArgumentError):
        ponderomotive_transform(np.eye(2), -0.1)


def test_unphysical_input_raises():
    with pytest.raises(InvalidArgumentError):
        ponderomotive_transform(0.5 * np.eye(2), 1.0)
