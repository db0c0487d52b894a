"""
Phase-sensitivity bounds of a Michelson interferometer.

This module models the Michelson fringe and gives the smallest
detectable phase for coherent, squeezed and loss-limited strategies, as
well as the resources needed to reach a given improvement with more
light or with squeezing.
"""
import logging
import math

from scipy import constants

from squeezed_light.exceptions import DomainError, InvalidArgumentError
from squeezed_light.models import PhaseBoundQuery, PhaseStrategy, ResourceComparison
from squeezed_light.phase_space import squeeze_parameter_from_db, variance_from_db
from squeezed_light.photon_stats import mean_photon_number
from squeezed_light.utils.helpers import C, check_positive

logger = logging.getLogger(__name__)


def fringe_power_fraction(phi: float) -> float:
    """Fraction sin^2(phi/2) of the input power leaving the signal port."""
    return math.sin(phi / 2.0) ** 2


def signal_slope(phi: float, n_mean: float) -> float:
    """
    Derivative of the detected photon number with respect to the phase.

    Args:
        phi: Michelson phase difference in radians
        n_mean: Mean photon number per measurement interval, > 0

    Returns:
        n_mean sin(phi/2) cos(phi/2)
    """
    n_mean = check_positive('n_mean', n_mean)
    return n_mean * math.sin(phi / 2.0) * math.cos(phi / 2.0)


def min_phase(query: PhaseBoundQuery) -> float:
    """
    Smallest detectable phase for the query's strategy.

    coherent: 1/sqrt(n); csv: e^{-r}/sqrt(n); heisenberg_single_shot: pi/n;
    coherent_loss: sqrt(1/(eta n)); csv_loss: sqrt((eta e^{-2r} + 1 - eta)/(eta n));
    optimal_loss: sqrt((1 - eta)/(eta n)).

    Raises:
        DomainError: for optimal_loss with eta = 1, where the bound is zero
    """
    n, eta, r = query.n_mean, query.eta, query.r
    strategy = query.strategy
    if strategy is PhaseStrategy.COHERENT:
        return 1.0 / math.sqrt(n)
    if strategy is PhaseStrategy.CSV:
        return math.exp(-r) / math.sqrt(n)
    if strategy is PhaseStrategy.HEISENBERG_SINGLE_SHOT:
        return math.pi / n
    if strategy is PhaseStrategy.COHERENT_LOSS:
        return math.sqrt(1.0 / (eta * n))
    if strategy is PhaseStrategy.CSV_LOSS:
        return math.sqrt((eta * math.exp(-2.0 * r) + 1.0 - eta) / (eta * n))
    if strategy is PhaseStrategy.OPTIMAL_LOSS:
        if eta >= 1.0:
            raise DomainError("the loss-limited optimal bound needs 0 < eta < 1")
        return math.sqrt((1.0 - eta) / (eta * n))
    raise InvalidArgumentError(f"unknown strategy {strategy!r}")


def csv_optimality_ratio(eta: float, r: float) -> float:
    """
    How far squeezed-light interferometry is above the loss-limited optimum.

    sqrt((eta e^{-2r} + 1 - eta) / (1 - eta)); at least one, approaching
    one as the squeezing grows.
    """
    eta = float(eta)
    if math.isnan(eta) or not 0.0 < eta < 1.0:
        raise DomainError(f"optimality ratio needs 0 < eta < 1, got {eta}")
    if not r >= 0:
        raise InvalidArgumentError(f"squeeze parameter r must be >= 0, got {r}")
    return math.sqrt((eta * math.exp(-2.0 * r) + 1.0 - eta) / (1.0 - eta))


def squeezing_resource_comparison(photon_rate: float, squeeze_db: float, bandwidth_hz: float,
                                  wavelength_m: float) -> ResourceComparison:
    """
    Compare two ways of improving a shot-noise-limited measurement.

    Reducing the noise variance by the squeeze factor with coherent light
    alone needs photon_rate (1/var - 1) extra photons per second. The same
    gain from a squeezed vacuum needs only its own photons,
    sinh^2(r) per second and hertz of detection bandwidth.

    Args:
        photon_rate: Coherent photons per second already used
        squeeze_db: Desired improvement as a squeeze factor in dB
        bandwidth_hz: Detection bandwidth the squeezing has to cover
        wavelength_m: Optical wavelength

    Returns:
        ResourceComparison with photon rates and optical powers
    """
    photon_rate = check_positive('photon_rate', photon_rate)
    bandwidth_hz = check_positive('bandwidth_hz', bandwidth_hz)
    wavelength_m = check_positive('wavelength_m', wavelength_m)
    if not squeeze_db >= 0:
        raise InvalidArgumentError(f"squeeze factor must be >= 0 dB, got {squeeze_db}")

    photon_energy = constants.h * C / wavelength_m
    extra_rate = photon_rate * (1.0 / variance_from_db(squeeze_db) - 1.0)
    squeezed_rate = mean_photon_number(0, squeeze_parameter_from_db(squeeze_db)) * bandwidth_hz
    logger.debug("%.3g dB: %.3g extra coherent photons/s vs %.3g squeezed photons/s",
                 squeeze_db, extra_rate, squeezed_rate)
    return ResourceComparison(
        extra_coherent_rate=extra_rate,
        extra_coherent_power_w=extra_rate * photon_energy,
        squeezed_rate=squeezed_rate,
        squeezed_power_w=squeezed_rate * photon_energy,
    )
