"""
Gaussian-state construction and transformation.

States are built and transformed in the covariance-matrix representation:
symplectic maps act as mean -> S mean, cov -> S cov S^T, and optical loss
mixes a mode with vacuum. All functions return new states and never modify
their inputs.
"""
import logging
import math
from typing import Sequence, Tuple

import numpy as np

from squeezed_light.exceptions import InvalidArgumentError
from squeezed_light.models import GaussianState, SqueezeSpec
from squeezed_light.utils.helpers import (
    PHYSICAL_TOLERANCE,
    as_unit_vector,
    block_indices,
    check_fraction,
    check_mode,
    mode_slice,
    reduce_angle,
    rotation_matrix,
    symmetrize,
    symplectic_eigenvalues,
)

logger = logging.getLogger(__name__)

# relative gap below which a 2x2 block counts as isotropic
_DEGENERACY_RTOL = 1e-12


def vacuum_state(n_modes: int) -> GaussianState:
    """
    Vacuum state of n modes: zero mean and identity covariance.

    Args:
        n_modes: Number of modes, at least one

    Returns:
        The vacuum GaussianState
    """
    if isinstance(n_modes, bool) or int(n_modes) != n_modes or n_modes < 1:
        raise InvalidArgumentError(f"n_modes must be a positive integer, got {n_modes!r}")
    n_modes = int(n_modes)
    return GaussianState(mean=np.zeros(2 * n_modes), cov=np.eye(2 * n_modes))


def squeezed_vacuum(spec: SqueezeSpec) -> GaussianState:
    """
    Pure single-mode squeezed vacuum.

    The covariance is R(theta)^T diag(e^{-2r}, e^{2r}) R(theta), so theta = 0
    squeezes the amplitude quadrature X and theta = 45 degrees reproduces
    ((5.05, 4.95), (4.95, 5.05)) at 10 dB.

    Args:
        spec: Squeezing parameters; eta must be 1 (use apply_loss or
            lossy_squeezed_vacuum for lossy states)

    Returns:
        Single-mode GaussianState with zero mean
    """
    if spec.eta != 1.0:
        raise InvalidArgumentError("squeezed_vacuum builds pure states; apply loss separately")
    rot = rotation_matrix(spec.theta)
    principal = np.diag([math.exp(-2.0 * spec.r), math.exp(2.0 * spec.r)])
    return GaussianState(mean=np.zeros(2), cov=rot.T @ principal @ rot)


def lossy_squeezed_vacuum(spec: SqueezeSpec) -> GaussianState:
    """Squeezed vacuum followed by the energy loss 1 - eta**2 of the spec."""
    pure = squeezed_vacuum(SqueezeSpec(r=spec.r, theta=spec.theta))
    return apply_loss(pure, 0, spec.eta ** 2)


def coherent_state(alpha: complex) -> GaussianState:
    """
    Coherent state |alpha> in vacuum-normalized quadrature units.

    With the vacuum variance scaled to one, <X> = 2 Re(alpha) and
    <Y> = 2 Im(alpha).
    """
    alpha = complex(alpha)
    return displace(vacuum_state(1), 0, 2.0 * alpha.real, 2.0 * alpha.imag)


def two_mode_squeezed_vacuum(r: float) -> GaussianState:
    """
    Two-mode squeezed vacuum from an amplitude- and a phase-squeezed vacuum
    overlapped on a balanced beam splitter.

    X_A - X_B and Y_A + Y_B are squeezed to e^{-2r} of their vacuum level.
    """
    product = tensor(squeezed_vacuum(SqueezeSpec(r=r, theta=0.0)),
                     squeezed_vacuum(SqueezeSpec(r=r, theta=math.pi / 2)))
    return beam_splitter(product, 0, 1, 0.5, 0.0)


def tensor(*states: GaussianState) -> GaussianState:
    """
    Combine independent states into one multimode state (direct sum).

    Args:
        *states: States in mode order

    Returns:
        GaussianState whose modes are those of the inputs, in order
    """
    if not states:
        raise InvalidArgumentError("tensor needs at least one state")
    size = sum(2 * s.n_modes for s in states)
    cov = np.zeros((size, size))
    offset = 0
    for s in states:
        width = 2 * s.n_modes
        cov[offset:offset + width, offset:offset + width] = s.cov
        offset += width
    return GaussianState(mean=np.concatenate([s.mean for s in states]), cov=cov)


def reduced_state(state: GaussianState, modes: Sequence[int]) -> GaussianState:
    """
    Partial trace: keep only the listed modes.

    For Gaussian states this selects the corresponding rows and columns of
    the mean and covariance.
    """
    modes = [check_mode(state.n_modes, m) for m in modes]
    if not modes or len(set(modes)) != len(modes):
        raise InvalidArgumentError(f"modes to keep must be distinct and non-empty, got {modes}")
    idx = block_indices(modes)
    return GaussianState(mean=state.mean[idx], cov=state.cov[np.ix_(idx, idx)])


def _apply_symplectic(state: GaussianState, matrix: np.ndarray) -> GaussianState:
    return GaussianState(mean=matrix @ state.mean, cov=symmetrize(matrix @ state.cov @ matrix.T))


def _embed(n_modes: int, mode: int, block: np.ndarray) -> np.ndarray:
    full = np.eye(2 * n_modes)
    s = mode_slice(mode)
    full[s, s] = block
    return full


def rotate(state: GaussianState, mode: int, phi: float) -> GaussianState:
    """
    Rotate one mode in phase space: cov -> R^T V R, mean -> R^T mean.

    Args:
        state: Input state
        mode: Mode index
        phi: Rotation angle in radians

    Returns:
        Rotated state; symplectic eigenvalues are unchanged
    """
    mode = check_mode(state.n_modes, mode)
    return _apply_symplectic(state, _embed(state.n_modes, mode, rotation_matrix(phi).T))


def displace(state: GaussianState, mode: int, dx: float, dy: float) -> GaussianState:
    """Shift the quadrature means of one mode by (dx, dy); the covariance is unchanged."""
    mode = check_mode(state.n_modes, mode)
    mean = np.array(state.mean)
    mean[mode_slice(mode)] += (float(dx), float(dy))
    return GaussianState(mean=mean, cov=state.cov)


def apply_loss(state: GaussianState, mode: int, eta_sq: float) -> GaussianState:
    """
    Optical loss on one mode: V' = eta_sq V + (1 - eta_sq) I on its block.

    The rows/columns coupling the mode to other modes scale with sqrt(eta_sq),
    as does the mean, so the result equals mixing with vacuum on a beam
    splitter of transmissivity eta_sq and discarding the other port.

    Args:
        state: Input state
        mode: Mode index
        eta_sq: Power transmission in [0, 1] (1 - eta_sq is the relative energy loss)

    Returns:
        The attenuated state
    """
    mode = check_mode(state.n_modes, mode)
    eta_sq = check_fraction('eta_sq', eta_sq)
    s = mode_slice(mode)
    amplitude = math.sqrt(eta_sq)
    scale = np.ones(2 * state.n_modes)
    scale[s] = amplitude
    cov = state.cov * np.outer(scale, scale)
    cov[s, s] += (1.0 - eta_sq) * np.eye(2)
    return GaussianState(mean=state.mean * scale, cov=cov)


def beam_splitter_matrix(n_modes: int, mode_a: int, mode_b: int,
                         transmissivity: float, relative_phase: float) -> np.ndarray:
    """
    Symplectic matrix of a lossless beam splitter between two modes.

    The complex amplitudes transform as
        a' =  sqrt(T) a + sqrt(1-T) e^{i phi} b
        b' = -sqrt(1-T) e^{-i phi} a + sqrt(T) b
    which is written out in the X, Y ordering below.
    """
    mode_a = check_mode(n_modes, mode_a)
    mode_b = check_mode(n_modes, mode_b)
    if mode_a == mode_b:
        raise InvalidArgumentError("beam splitter needs two distinct modes")
    transmissivity = check_fraction('transmissivity', transmissivity)
    t = math.sqrt(transmissivity)
    rho = math.sqrt(1.0 - transmissivity)
    c, s = math.cos(relative_phase), math.sin(relative_phase)
    local = np.array([
        [t, 0.0, rho * c, -rho * s],
        [0.0, t, rho * s, rho * c],
        [-rho * c, -rho * s, t, 0.0],
        [rho * s, -rho * c, 0.0, t],
    ])
    full = np.eye(2 * n_modes)
    idx = block_indices([mode_a, mode_b])
    full[np.ix_(idx, idx)] = local
    return full


def beam_splitter(state: GaussianState, mode_a: int, mode_b: int,
                  transmissivity: float, relative_phase: float = 0.0) -> GaussianState:
    """
    Mix two modes on a lossless beam splitter.

    Args:
        state: Input state
        mode_a: First input mode
        mode_b: Second input mode
        transmissivity: Power transmission T in [0, 1]
        relative_phase: Phase of the reflected amplitude in radians

    Returns:
        State after the passive two-mode transform
    """
    matrix = beam_splitter_matrix(state.n_modes, mode_a, mode_b, transmissivity, relative_phase)
    return _apply_symplectic(state, matrix)


def quadrature_variance(state: GaussianState, mode: int, vartheta: float) -> float:
    """
    Variance of X cos(vartheta) + Y sin(vartheta) on one mode (vacuum = 1).

    Args:
        state: Input state
        mode: Mode index
        vartheta: Quadrature angle in radians

    Returns:
        cos^2 V_XX + 2 sin cos V_XY + sin^2 V_YY
    """
    mode = check_mode(state.n_modes, mode)
    direction = as_unit_vector(vartheta)
    return float(direction @ state.block(mode) @ direction)


def quadrature_mean(state: GaussianState, mode: int, vartheta: float) -> float:
    """Mean of the quadrature X cos(vartheta) + Y sin(vartheta) on one mode."""
    mode = check_mode(state.n_modes, mode)
    return float(as_unit_vector(vartheta) @ state.mode_mean(mode))


def minimal_variance_quadrature(state: GaussianState, mode: int) -> Tuple[float, float]:
    """
    Quadrature angle of lowest variance (the squeeze angle) and that variance.

    Args:
        state: Input state
        mode: Mode index

    Returns:
        (theta_min in [0, pi), var_min). Isotropic blocks return theta_min = 0.
    """
    mode = check_mode(state.n_modes, mode)
    eigenvalues, eigenvectors = np.linalg.eigh(state.block(mode))
    var_min = float(eigenvalues[0])
    if eigenvalues[1] - eigenvalues[0] <= _DEGENERACY_RTOL * max(1.0, abs(eigenvalues[1])):
        return 0.0, var_min
    vx, vy = eigenvectors[:, 0]
    return reduce_angle(math.atan2(vy, vx)), var_min


def purity(state: GaussianState) -> float:
    """Purity 1/sqrt(det V); one for pure states."""
    return float(1.0 / math.sqrt(np.linalg.det(state.cov)))


def is_physical(cov: np.ndarray) -> bool:
    """Whether a symmetric matrix satisfies the uncertainty bound (all symplectic eigenvalues >= 1)."""
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
        return False
    if not np.allclose(cov, cov.T, rtol=0.0, atol=PHYSICAL_TOLERANCE):
        return False
    return bool(np.min(symplectic_eigenvalues(cov)) >= 1.0 - PHYSICAL_TOLERANCE)


def to_quarter_convention(cov: np.ndarray) -> np.ndarray:
    """Rescale a vacuum-normalized covariance to the convention where the vacuum variance is 1/4."""
    return np.asarray(cov, dtype=float) / 4.0


def from_quarter_convention(cov: np.ndarray) -> np.ndarray:
    """Inverse of to_quarter_convention."""
    return np.asarray(cov, dtype=float) * 4.0
