"""
Phase-space representation of Gaussian states.

Wigner functions and quadrature marginals are evaluated in vacuum-normalized
coordinates (vacuum variance 1), where the Wigner function of a Gaussian
state is the bivariate normal density of its mean and covariance and
integrates to one.
"""
import logging
import math
from typing import Tuple

import numpy as np
from scipy import integrate, stats

from squeezed_light.exceptions import InvalidArgumentError
from squeezed_light.gaussian import apply_loss, quadrature_mean, quadrature_variance, squeezed_vacuum
from squeezed_light.models import GaussianState, SqueezeSpec, WignerGrid
from squeezed_light.utils.helpers import check_fraction, check_mode

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 257
DEFAULT_SPAN_SIGMA = 6.0

_DB_PER_NEPER = 20.0 / math.log(10)


def wigner_value(state: GaussianState, mode: int, x: float, y: float) -> float:
    """
    Wigner function of one mode at the phase-space point (x, y).

    Args:
        state: Gaussian state
        mode: Mode index
        x: Amplitude-quadrature coordinate
        y: Phase-quadrature coordinate

    Returns:
        Quasi-probability density; 1/(2 pi) at the centre of any pure state
    """
    mode = check_mode(state.n_modes, mode)
    density = stats.multivariate_normal(mean=state.mode_mean(mode), cov=state.block(mode))
    return float(density.pdf([x, y]))


def marginal_density(state: GaussianState, mode: int, vartheta: float, value: float) -> float:
    """
    Probability density of measuring `value` for the quadrature at angle vartheta.

    This is the Wigner function integrated along the orthogonal quadrature:
    a normal density with the quadrature's mean and variance.
    """
    mode = check_mode(state.n_modes, mode)
    loc = quadrature_mean(state, mode, vartheta)
    scale = math.sqrt(quadrature_variance(state, mode, vartheta))
    return float(stats.norm(loc=loc, scale=scale).pdf(value))


def db_from_variance(var: float) -> float:
    """
    Squeeze factor in dB of a variance relative to vacuum: -10 log10(var).

    Args:
        var: Vacuum-normalized variance, > 0

    Returns:
        Positive values for squeezing, negative for anti-squeezing
    """
    if not var > 0:
        raise InvalidArgumentError(f"variance must be positive, got {var}")
    return -10.0 * math.log10(var)


def variance_from_db(db: float) -> float:
    """Inverse of db_from_variance."""
    return 10.0 ** (-db / 10.0)


def db_from_squeeze_parameter(r: float) -> float:
    """Squeeze factor in dB of the variance e^{-2r}."""
    return _DB_PER_NEPER * r


def squeeze_parameter_from_db(db: float) -> float:
    """Squeeze parameter r whose variance e^{-2r} corresponds to db."""
    return db / _DB_PER_NEPER


def lossy_squeezing_db(r: float, eta_sq: float) -> Tuple[float, float]:
    """
    Squeezed and anti-squeezed levels in dB after optical loss.

    Args:
        r: Squeeze parameter of the pure state
        eta_sq: Power transmission (1 - eta_sq is the relative energy loss)

    Returns:
        (squeezing dB, anti-squeezing dB); the latter is negative
    """
    eta_sq = check_fraction('eta_sq', eta_sq)
    state = apply_loss(squeezed_vacuum(SqueezeSpec(r=r)), 0, eta_sq)
    return (db_from_variance(quadrature_variance(state, 0, 0.0)),
            db_from_variance(quadrature_variance(state, 0, math.pi / 2)))


def wigner_grid(state: GaussianState, mode: int = 0, points: int = DEFAULT_GRID_POINTS,
                span_sigma: float = DEFAULT_SPAN_SIGMA) -> WignerGrid:
    """
    Sample the Wigner function of one mode on a uniform grid.

    Each axis spans span_sigma standard deviations of the corresponding
    marginal around the mean.

    Args:
        state: Gaussian state
        mode: Mode index
        points: Points per axis
        span_sigma: Half-width of each axis in standard deviations

    Returns:
        WignerGrid with values[i, j] = W(x_i, y_j)
    """
    mode = check_mode(state.n_modes, mode)
    if points < 2:
        raise InvalidArgumentError(f"a Wigner grid needs at least 2 points per axis, got {points}")
    mean = state.mode_mean(mode)
    sigma = np.sqrt(np.diag(state.block(mode)))
    x_axis = np.linspace(mean[0] - span_sigma * sigma[0], mean[0] + span_sigma * sigma[0], points)
    y_axis = np.linspace(mean[1] - span_sigma * sigma[1], mean[1] + span_sigma * sigma[1], points)
    xx, yy = np.meshgrid(x_axis, y_axis, indexing='ij')
    density = stats.multivariate_normal(mean=mean, cov=state.block(mode))
    values = density.pdf(np.stack([xx, yy], axis=-1))
    logger.debug("Wigner grid for mode %d: %d x %d points", mode, points, points)
    return WignerGrid(x_axis=x_axis, y_axis=y_axis, values=values, mode=mode)


def grid_normalization(grid: WignerGrid) -> float:
    """Riemann sum of the sampled Wigner function over the grid."""
    dx = grid.x_axis[1] - grid.x_axis[0]
    dy = grid.y_axis[1] - grid.y_axis[0]
    return float(grid.values.sum() * dx * dy)


def marginal_from_grid(grid: WignerGrid) -> np.ndarray:
    """Numerically integrate the sampled Wigner function over Y, giving p(X) on grid.x_axis."""
    return integrate.trapezoid(grid.values, grid.y_axis, axis=1)
