"""
Cavity models for squeezed-light sources and filters.

Covers the squeeze-ellipse rotation imposed by detuned filter cavities,
the intracavity squeezing bound of a single-ended resonator, and the
Lorentzian squeezing spectrum of a degenerate OPO below threshold.
"""
import logging
import math
from typing import Tuple, Union

import numpy as np

from squeezed_light.exceptions import DomainError, InvalidArgumentError
from squeezed_light.models import FilterCavitySpec
from squeezed_light.phase_space import db_from_variance
from squeezed_light.utils.helpers import check_fraction, check_positive, ensure_finite, wrap_half_turn

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _reflection_phase(omega: float, detuning: float, half_bandwidth: float) -> float:
    return -2.0 * math.atan((omega - detuning) / half_bandwidth)


def filter_cavity_rotation(spec: FilterCavitySpec, omega: float) -> float:
    """
    Squeeze-angle rotation imposed by reflection off a filter-cavity chain.

    Each lossless single-ended cavity adds the phase
    phi(Omega) = -2 arctan((Omega - Delta) / gamma) to a sideband and turns
    the ellipse by the mean of the upper and lower sideband phases. The
    rotations of the chain add.

    Args:
        spec: Filter cavities with detuning and half bandwidth in Hz
        omega: Sideband frequency in rad/s

    Returns:
        Rotation in (-pi/2, pi/2]
    """
    omega = float(omega)
    total = 0.0
    for cavity in spec.cavities:
        detuning = 2.0 * math.pi * cavity.detuning_hz
        half_bandwidth = 2.0 * math.pi * cavity.half_bandwidth_hz
        total += 0.5 * (_reflection_phase(omega, detuning, half_bandwidth)
                        + _reflection_phase(-omega, detuning, half_bandwidth))
    logger.debug("filter chain of %d cavities rotates by %.4f rad at %.6g rad/s",
                 len(spec.cavities), total, omega)
    return wrap_half_turn(total)


def intracavity_squeeze_limit(r1: float) -> float:
    """
    Strongest intracavity squeeze factor (1 + r1)^2 / r1^2 in dB.

    Args:
        r1: Amplitude reflectivity of the coupling mirror, in (0, 1]

    Returns:
        6.02 dB for r1 = 1, growing without bound as r1 -> 0
    """
    r1 = check_fraction('r1', r1, low_open=True)
    return float(ensure_finite('intracavity squeeze limit', 20.0 * (math.log10(1.0 + r1) - math.log10(r1))))


def _check_opo(pump_ratio_x: float, gamma: float, eta_total: float) -> None:
    if not pump_ratio_x >= 0:
        raise InvalidArgumentError(f"pump ratio must be >= 0, got {pump_ratio_x}")
    if pump_ratio_x >= 1:
        raise DomainError(f"OPO at or above threshold (pump ratio {pump_ratio_x}); the spectrum is undefined")
    check_positive('gamma', gamma)
    check_fraction('eta_total', eta_total)


def opo_squeezing_spectrum(pump_ratio_x: float, gamma: float, eta_total: float,
                           omega: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """
    Output variances of a degenerate OPO below threshold.

    V-(Omega) = 1 - eta 4x / ((1 + x)^2 + (Omega/gamma)^2)
    V+(Omega) = 1 + eta 4x / ((1 - x)^2 + (Omega/gamma)^2)

    Args:
        pump_ratio_x: Pump amplitude relative to threshold, in [0, 1)
        gamma: Cavity half bandwidth in rad/s
        eta_total: Total detection efficiency
        omega: Sideband frequency (scalar or array) in rad/s

    Returns:
        (squeezed variance, anti-squeezed variance), scalars or arrays like omega
    """
    _check_opo(pump_ratio_x, gamma, eta_total)
    x = float(pump_ratio_x)
    detuning_sq = (np.asarray(omega, dtype=float) / gamma) ** 2
    squeezed = 1.0 - eta_total * 4.0 * x / ((1.0 + x) ** 2 + detuning_sq)
    antisqueezed = 1.0 + eta_total * 4.0 * x / ((1.0 - x) ** 2 + detuning_sq)
    if np.ndim(omega) == 0:
        return float(squeezed), float(antisqueezed)
    return squeezed, antisqueezed


def opo_squeezing_db(pump_ratio_x: float, gamma: float, eta_total: float,
                     omega: float) -> Tuple[float, float]:
    """Squeezing and anti-squeezing of the OPO output in dB at one sideband frequency."""
    squeezed, antisqueezed = opo_squeezing_spectrum(pump_ratio_x, gamma, eta_total, float(omega))
    return db_from_variance(squeezed), db_from_variance(antisqueezed)
