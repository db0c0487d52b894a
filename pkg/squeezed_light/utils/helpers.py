"""
Helper functions shared across the squeezed_light package.

This module contains physical constants, angle bookkeeping, argument
validation and small linear-algebra utilities for phase-space matrices.
"""
import math
from datetime import datetime
from typing import Sequence

import numpy as np
import pytz
from scipy import constants

from squeezed_light.exceptions import InvalidArgumentError, NumericRangeError

# CODATA 2018 values; every example number in the test suite depends on these.
HBAR = constants.hbar  # 1.054571817e-34 J s
C = constants.c  # 299792458 m/s

PHYSICAL_TOLERANCE = 1e-9
SYMMETRY_RTOL = 1e-12


def reduce_angle(theta: float) -> float:
    """
    Reduce an angle to the half-open interval [0, pi).

    Quadrature variances and squeeze ellipses are pi-periodic, so this is
    the canonical representative for squeeze angles.

    Args:
        theta: Angle in radians

    Returns:
        Equivalent angle in [0, pi)
    """
    reduced = math.fmod(theta, math.pi)
    if reduced < 0:
        reduced += math.pi
    # fmod can return pi itself after the shift for tiny negative inputs
    if reduced >= math.pi:
        reduced = 0.0
    return reduced


def wrap_half_turn(theta: float) -> float:
    """Map an angle onto (-pi/2, pi/2], the pi-periodic range centred on zero."""
    wrapped = reduce_angle(theta)
    if wrapped > math.pi / 2:
        wrapped -= math.pi
    return wrapped


def check_mode(n_modes: int, mode: int) -> int:
    """
    Validate a mode index against the number of modes of a state.

    Args:
        n_modes: Number of modes in the state
        mode: Mode index to check

    Returns:
        The mode index as an int

    Raises:
        InvalidArgumentError: if the index is out of range
    """
    if isinstance(mode, bool) or int(mode) != mode:
        raise InvalidArgumentError(f"mode index must be an integer, got {mode!r}")
    mode = int(mode)
    if not 0 <= mode < n_modes:
        raise InvalidArgumentError(f"mode {mode} out of range for a {n_modes}-mode state")
    return mode


def check_fraction(name: str, value: float, low_open: bool = False, high_open: bool = False) -> float:
    """
    Validate that a value lies in the unit interval.

    Args:
        name: Parameter name used in the error message
        value: Value to check
        low_open: Exclude 0 from the allowed range
        high_open: Exclude 1 from the allowed range

    Returns:
        The value as a float
    """
    value = float(value)
    too_low = value <= 0.0 if low_open else value < 0.0
    too_high = value >= 1.0 if high_open else value > 1.0
    if math.isnan(value) or too_low or too_high:
        lo = "(" if low_open else "["
        hi = ")" if high_open else "]"
        raise InvalidArgumentError(f"{name} must lie in {lo}0, 1{hi}, got {value}")
    return value


def check_positive(name: str, value: float) -> float:
    """Validate a strictly positive, finite physical quantity."""
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise InvalidArgumentError(f"{name} must be positive and finite, got {value}")
    return value


def ensure_finite(name: str, value):
    """
    Guard against silent infinities or NaNs in a result.

    Args:
        name: Quantity name for the error message
        value: Scalar or array to check

    Returns:
        The unchanged value

    Raises:
        NumericRangeError: if any element is not finite
    """
    if not np.all(np.isfinite(value)):
        raise NumericRangeError(f"{name} is outside the representable floating-point range")
    return value


def symplectic_form(n_modes: int) -> np.ndarray:
    """Symplectic form for the ordering X1, Y1, X2, Y2, ..."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """
    Symplectic eigenvalues of a vacuum-normalized covariance matrix.

    The eigenvalues of i*Omega*V come in +/- pairs; their moduli, sorted
    and deduplicated pairwise, are the symplectic spectrum. Vacuum has all
    eigenvalues equal to one.

    Args:
        cov: 2n x 2n covariance matrix

    Returns:
        Sorted array of n symplectic eigenvalues
    """
    cov = np.asarray(cov, dtype=float)
    n_modes = cov.shape[0] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(n_modes) @ cov)))
    return moduli[::2]


def rotation_matrix(phi: float) -> np.ndarray:
    """Rotation matrix R = ((cos, -sin), (sin, cos)); states rotate as R^T V R."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    """Average a matrix with its transpose to remove floating-point drift."""
    return 0.5 * (matrix + matrix.T)


def frequency_grid(f_min: float, f_max: float, points: int, log: bool = True) -> np.ndarray:
    """
    Build a strictly increasing frequency grid in Hz.

    Args:
        f_min: Lowest frequency, > 0 for log spacing
        f_max: Highest frequency
        points: Number of grid points
        log: Use logarithmic spacing

    Returns:
        1-D array of frequencies
    """
    if int(points) != points or points < 1:
        raise InvalidArgumentError(f"grid needs at least one point, got {points}")
    points = int(points)
    if points > 1 and not f_max > f_min:
        raise InvalidArgumentError(f"f_max ({f_max}) must exceed f_min ({f_min})")
    if log:
        check_positive("f_min", f_min)
        return np.logspace(math.log10(f_min), math.log10(f_max), points)
    return np.linspace(f_min, f_max, points)


def as_unit_vector(angle: float) -> np.ndarray:
    """Unit vector (cos, sin) selecting the quadrature X cos(angle) + Y sin(angle)."""
    return np.array([math.cos(angle), math.sin(angle)])


def utc_timestamp() -> str:
    """Current time in UTC as an ISO-8601 string, used for provenance metadata."""
    return datetime.now(pytz.UTC).isoformat()


def mode_slice(mode: int) -> slice:
    """Slice of the quadrature vector belonging to one mode."""
    return slice(2 * mode, 2 * mode + 2)


def block_indices(modes: Sequence[int]) -> np.ndarray:
    """Quadrature indices (X, Y interleaved) of a list of modes."""
    return np.array([idx for mode in modes for idx in (2 * mode, 2 * mode + 1)], dtype=int)
