"""
Models module for the simulation's data structures.

This module defines the immutable value types passed between the simulation
modules: Gaussian states, squeezing and interferometer parameters, photon
distributions, spectra and homodyne traces.

Quadrature vectors are ordered X1, Y1, X2, Y2, ... and covariance matrices
are normalized so that the vacuum covariance is the identity.
"""
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from squeezed_light.exceptions import InvalidArgumentError
from squeezed_light.utils.helpers import (
    C,
    PHYSICAL_TOLERANCE,
    SYMMETRY_RTOL,
    check_fraction,
    check_positive,
    mode_slice,
    reduce_angle,
    symmetrize,
    symplectic_eigenvalues,
)


def _frozen_array(values, name: str, ndim: int) -> np.ndarray:
    array = np.array(values, dtype=float)
    if array.ndim != ndim:
        raise InvalidArgumentError(f"{name} must be {ndim}-dimensional, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class GaussianState:
    """
    Gaussian state of n modes in the covariance-matrix representation.

    The state is validated on construction: the covariance matrix must be
    symmetric and satisfy the uncertainty bound (all symplectic eigenvalues
    at least one). Arrays are stored read-only so states can be shared.
    """
    mean: np.ndarray
    cov: np.ndarray
    n_modes: int = field(init=False)

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        mean = np.array(self.mean, dtype=float).reshape(-1)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] == 0 or cov.shape[0] % 2:
            raise InvalidArgumentError(f"covariance must be a non-empty 2n x 2n matrix, got shape {cov.shape}")
        if mean.shape[0] != cov.shape[0]:
            raise InvalidArgumentError(
                f"mean has length {mean.shape[0]} but covariance is {cov.shape[0]} x {cov.shape[0]}")
        if not np.all(np.isfinite(cov)) or not np.all(np.isfinite(mean)):
            raise InvalidArgumentError("state contains non-finite entries")

        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > SYMMETRY_RTOL * scale:
            raise InvalidArgumentError("covariance matrix is not symmetric")
        cov = symmetrize(cov)

        nu_min = float(np.min(symplectic_eigenvalues(cov)))
        if nu_min < 1.0 - PHYSICAL_TOLERANCE:
            raise InvalidArgumentError(
                f"covariance violates the uncertainty relation (smallest symplectic eigenvalue {nu_min:.6g} < 1)")

        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, 'mean', mean)
        object.__setattr__(self, 'cov', cov)
        object.__setattr__(self, 'n_modes', cov.shape[0] // 2)

    def block(self, mode: int) -> np.ndarray:
        """Return a copy of the 2x2 covariance block of one mode."""
        s = mode_slice(mode)
        return np.array(self.cov[s, s])

    def mode_mean(self, mode: int) -> np.ndarray:
        """Return a copy of the (<X>, <Y>) means of one mode."""
        return np.array(self.mean[mode_slice(mode)])

    def to_dict(self) -> Dict[str, Any]:
        """Convert the state to a JSON-friendly dictionary."""
        return {
            'n_modes': self.n_modes,
            'mean': self.mean.tolist(),
            'cov': self.cov.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GaussianState':
        """Create a state from a dictionary produced by to_dict."""
        return cls(mean=data['mean'], cov=data['cov'])


@dataclass(frozen=True)
class SqueezeSpec:
    """
    Squeezing parameters for an injected or prepared state.

    Attributes:
        r: Squeeze parameter (e^{-2r} is the squeezed variance)
        theta: Squeeze angle in radians, reduced to [0, pi)
        eta: Amplitude efficiency; 1 - eta**2 is the relative energy loss
    """
    r: float
    theta: float = 0.0
    eta: float = 1.0

    def __post_init__(self):
        r = float(self.r)
        if not math.isfinite(r) or r < 0:
            raise InvalidArgumentError(f"squeeze parameter r must be >= 0, got {self.r}")
        object.__setattr__(self, 'r', r)
        object.__setattr__(self, 'theta', reduce_angle(float(self.theta)))
        object.__setattr__(self, 'eta', check_fraction('eta', self.eta))

    @classmethod
    def from_db(cls, db: float, theta: float = 0.0, eta: float = 1.0) -> 'SqueezeSpec':
        """Build a spec from a squeeze factor in dB (10 dB <=> variance 0.1)."""
        if db < 0:
            raise InvalidArgumentError(f"squeeze factor must be >= 0 dB, got {db}")
        return cls(r=db * math.log(10) / 20.0, theta=theta, eta=eta)

    @property
    def db(self) -> float:
        """Squeeze factor in dB before loss."""
        return 20.0 * self.r / math.log(10)


@dataclass(frozen=True)
class ArmCavity:
    """Lossless Fabry-Perot arm resonator, described by its input-mirror power transmission."""
    t_fp: float

    def __post_init__(self):
        object.__setattr__(self, 't_fp', check_fraction('t_fp', self.t_fp, low_open=True))


@dataclass(frozen=True)
class Pendulum:
    """Suspension resonance of the test masses."""
    omega_m: float
    q: float

    def __post_init__(self):
        object.__setattr__(self, 'omega_m', check_positive('omega_m', self.omega_m))
        object.__setattr__(self, 'q', check_positive('q', self.q))


@dataclass(frozen=True)
class InterferometerConfig:
    """
    Simple Michelson interferometer parameters for quantum-noise budgets.

    power_w is the total light power in the arms including cavity
    build-ups. The reduced mass entering all noise formulas is half of
    the mirror mass.
    """
    power_w: float
    wavelength_m: float
    arm_length_m: float
    mirror_mass_kg: float
    arm_cavity: Optional[ArmCavity] = None
    pendulum: Optional[Pendulum] = None

    def __post_init__(self):
        for name in ('power_w', 'wavelength_m', 'arm_length_m', 'mirror_mass_kg'):
            object.__setattr__(self, name, check_positive(name, getattr(self, name)))

    @property
    def omega(self) -> float:
        """Optical angular frequency 2*pi*c/lambda."""
        return 2.0 * math.pi * C / self.wavelength_m

    @property
    def reduced_mass_kg(self) -> float:
        return self.mirror_mass_kg / 2.0

    @property
    def gamma_fp(self) -> Optional[float]:
        """Arm-cavity half bandwidth c*T_FP/(4L) in rad/s, or None without arm cavities."""
        if self.arm_cavity is None:
            return None
        return C * self.arm_cavity.t_fp / (4.0 * self.arm_length_m)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the configuration to a dictionary."""
        return {
            'power_w': self.power_w,
            'wavelength_m': self.wavelength_m,
            'arm_length_m': self.arm_length_m,
            'mirror_mass_kg': self.mirror_mass_kg,
            'arm_cavity': None if self.arm_cavity is None else {'t_fp': self.arm_cavity.t_fp},
            'pendulum': None if self.pendulum is None else {
                'omega_m': self.pendulum.omega_m, 'q': self.pendulum.q},
        }


class Normalization(Enum):
    DISPLACEMENT = 'displacement'
    STRAIN = 'strain'


class Susceptibility(Enum):
    FREE_MASS = 'free_mass'
    PENDULUM = 'pendulum'


class SqlVariant(Enum):
    FREE_MASS = 'free_mass'
    WITH_ARM_CAVITIES = 'with_arm_cavities'


class SpectrumUnits(Enum):
    DISPLACEMENT = 'm/sqrt(Hz)'
    STRAIN = '1/sqrt(Hz)'
    DIMENSIONLESS = 'dimensionless'


@dataclass(frozen=True, eq=False)
class SpectrumSeries:
    """Frequency grid with spectral values and their units."""
    f_hz: np.ndarray
    values: np.ndarray
    units: SpectrumUnits

    def __post_init__(self):
        f_hz = _frozen_array(self.f_hz, 'f_hz', 1)
        values = _frozen_array(self.values, 'values', 1)
        if f_hz.shape != values.shape:
            raise InvalidArgumentError("frequency grid and values differ in length")
        if f_hz.size > 1 and not np.all(np.diff(f_hz) > 0):
            raise InvalidArgumentError("frequency grid must be strictly increasing")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise InvalidArgumentError("spectral values must be finite and non-negative")
        object.__setattr__(self, 'f_hz', f_hz)
        object.__setattr__(self, 'values', values)

    def to_db(self) -> np.ndarray:
        """Values in dB relative to one (power ratios)."""
        with np.errstate(divide='ignore'):
            return 10.0 * np.log10(self.values)

    def to_frame(self, column: str = 'value') -> pd.DataFrame:
        return pd.DataFrame({'f_hz': self.f_hz, column: self.values})


@dataclass(frozen=True)
class FilterCavity:
    """Detuned single-ended filter cavity; frequencies in Hz."""
    detuning_hz: float
    half_bandwidth_hz: float

    def __post_init__(self):
        object.__setattr__(self, 'detuning_hz', float(self.detuning_hz))
        if not float(self.half_bandwidth_hz) > 0:
            raise InvalidArgumentError(
                f"filter cavity half bandwidth must be > 0, got {self.half_bandwidth_hz}")
        object.__setattr__(self, 'half_bandwidth_hz', float(self.half_bandwidth_hz))


@dataclass(frozen=True)
class FilterCavitySpec:
    """Chain of filter cavities the squeezed field is reflected from in turn."""
    cavities: Tuple[FilterCavity, ...]

    def __post_init__(self):
        cavities = tuple(self.cavities)
        if not cavities:
            raise InvalidArgumentError("a filter-cavity chain needs at least one cavity")
        object.__setattr__(self, 'cavities', cavities)


@dataclass(frozen=True)
class NoInjection:
    """Ordinary vacuum enters the dark port."""


@dataclass(frozen=True)
class FixedSqueeze:
    """Squeezed vacuum with a frequency-independent squeeze angle."""
    spec: SqueezeSpec


@dataclass(frozen=True)
class OptimalFrequencyDependent:
    """Squeezed vacuum whose angle is optimized at every sideband frequency."""
    r: float
    eta: float = 1.0

    def __post_init__(self):
        r = float(self.r)
        if not math.isfinite(r) or r < 0:
            raise InvalidArgumentError(f"squeeze parameter r must be >= 0, got {self.r}")
        object.__setattr__(self, 'r', r)
        object.__setattr__(self, 'eta', check_fraction('eta', self.eta))


@dataclass(frozen=True)
class FilterCavityInjection:
    """Squeezed vacuum reflected off a filter-cavity chain before injection."""
    spec: SqueezeSpec
    filters: FilterCavitySpec


Injection = Union[NoInjection, FixedSqueeze, OptimalFrequencyDependent, FilterCavityInjection]


@dataclass(frozen=True, eq=False)
class PhotonDistribution:
    """
    Photon-number probabilities P(N) for N = 0 ... n_max of a pure
    displaced squeezed state, with the analytic mean for comparison.
    """
    n_max: int
    probs: np.ndarray
    mean_analytic: float
    alpha: complex = 0j
    r: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        probs = _frozen_array(self.probs, 'probs', 1)
        if probs.shape[0] != self.n_max + 1:
            raise InvalidArgumentError("probability table length must be n_max + 1")
        if np.any(probs < 0):
            raise InvalidArgumentError("probabilities must be non-negative")
        if probs.sum() > 1.0 + 1e-9:
            raise InvalidArgumentError(f"probabilities sum to {probs.sum():.12g} > 1")
        object.__setattr__(self, 'probs', probs)

    @property
    def mass(self) -> float:
        return float(self.probs.sum())

    @property
    def mean_numeric(self) -> float:
        return float(np.arange(self.n_max + 1) @ self.probs)

    @property
    def variance_numeric(self) -> float:
        n = np.arange(self.n_max + 1)
        mean = self.mean_numeric
        return float(((n - mean) ** 2) @ self.probs)

    @property
    def truncated(self) -> bool:
        """True when the table misses more than 1e-6 of the probability mass."""
        return self.mass < 1.0 - 1e-6

    def to_frame(self) -> pd.DataFrame:
        """Table with columns n, p."""
        return pd.DataFrame({'n': np.arange(self.n_max + 1), 'p': self.probs})


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Wigner function sampled on a uniform grid; values[i, j] = W(x_i, y_j)."""
    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray
    mode: int = 0

    def __post_init__(self):
        x_axis = _frozen_array(self.x_axis, 'x_axis', 1)
        y_axis = _frozen_array(self.y_axis, 'y_axis', 1)
        values = _frozen_array(self.values, 'values', 2)
        if values.shape != (x_axis.size, y_axis.size):
            raise InvalidArgumentError("Wigner values do not match the grid axes")
        object.__setattr__(self, 'x_axis', x_axis)
        object.__setattr__(self, 'y_axis', y_axis)
        object.__setattr__(self, 'values', values)

    def to_frame(self) -> pd.DataFrame:
        """Long-format table with columns x, y, w."""
        xx, yy = np.meshgrid(self.x_axis, self.y_axis, indexing='ij')
        return pd.DataFrame({'x': xx.ravel(), 'y': yy.ravel(), 'w': self.values.ravel()})


@dataclass(frozen=True, eq=False)
class BipartiteCovariance:
    """Covariance matrix of two modes A and B in the ordering X_A, Y_A, X_B, Y_B."""
    cov: np.ndarray

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        if cov.shape != (4, 4):
            raise InvalidArgumentError(f"bipartite covariance must be 4x4, got shape {cov.shape}")
        # GaussianState performs the symmetry and uncertainty checks
        state = GaussianState(mean=np.zeros(4), cov=cov)
        object.__setattr__(self, 'cov', state.cov)

    @classmethod
    def from_state(cls, state: GaussianState) -> 'BipartiteCovariance':
        if state.n_modes != 2:
            raise InvalidArgumentError(f"expected a two-mode state, got {state.n_modes} modes")
        return cls(cov=state.cov)


class PhaseStrategy(Enum):
    COHERENT = 'coherent'
    CSV = 'csv'
    HEISENBERG_SINGLE_SHOT = 'heisenberg_single_shot'
    COHERENT_LOSS = 'coherent_loss'
    CSV_LOSS = 'csv_loss'
    OPTIMAL_LOSS = 'optimal_loss'


@dataclass(frozen=True)
class PhaseBoundQuery:
    """
    Inputs for a phase-sensitivity bound.

    n_mean is the mean photon number per measurement interval; repetition
    factors are folded into it by the caller.
    """
    n_mean: float
    strategy: PhaseStrategy
    eta: float = 1.0
    r: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'n_mean', check_positive('n_mean', self.n_mean))
        object.__setattr__(self, 'strategy', PhaseStrategy(self.strategy))
        object.__setattr__(self, 'eta', check_fraction('eta', self.eta, low_open=True))
        if not self.r >= 0:
            raise InvalidArgumentError(f"squeeze parameter r must be >= 0, got {self.r}")


@dataclass(frozen=True, eq=False)
class HomodyneTrace:
    """
    Sampled balanced-homodyne output in vacuum-normalized units.

    lo_phase is either a constant angle or one angle per sample.
    """
    samples: np.ndarray
    sample_rate_hz: float
    lo_phase: Union[float, np.ndarray]
    source: str
    seed: Optional[int]

    def __post_init__(self):
        object.__setattr__(self, 'samples', _frozen_array(self.samples, 'samples', 1))
        object.__setattr__(self, 'sample_rate_hz', check_positive('sample_rate_hz', self.sample_rate_hz))
        if not np.isscalar(self.lo_phase):
            object.__setattr__(self, 'lo_phase', _frozen_array(self.lo_phase, 'lo_phase', 1))

    @property
    def n_samples(self) -> int:
        return int(self.samples.size)

    @property
    def time_s(self) -> np.ndarray:
        return np.arange(self.n_samples) / self.sample_rate_hz

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'t_s': self.time_s, 'sample': self.samples})


@dataclass(frozen=True, eq=False)
class PhaseScan:
    """Rolling quadrature variance (dB relative to vacuum) of a trace with a ramped LO phase."""
    time_s: np.ndarray
    lo_phase_rad: np.ndarray
    variance_db: np.ndarray

    def __post_init__(self):
        time_s = _frozen_array(self.time_s, 'time_s', 1)
        if time_s.size > 1 and not np.all(np.diff(time_s) > 0):
            raise InvalidArgumentError("time axis must be strictly increasing")
        object.__setattr__(self, 'time_s', time_s)
        object.__setattr__(self, 'lo_phase_rad', _frozen_array(self.lo_phase_rad, 'lo_phase_rad', 1))
        object.__setattr__(self, 'variance_db', _frozen_array(self.variance_db, 'variance_db', 1))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            't_s': self.time_s,
            'lo_phase_rad': self.lo_phase_rad,
            'variance_db': self.variance_db,
        })


@dataclass(frozen=True)
class QdmSignal:
    """Phase-quadrature (Y) signal tone."""
    amplitude: float
    frequency_hz: float


@dataclass(frozen=True)
class QdmDisturbance:
    """Disturbance tone along an arbitrary phase-space angle (0 = pure X)."""
    amplitude: float
    angle_rad: float
    frequency_hz: float


@dataclass(frozen=True)
class QdmScenario:
    """
    Entangled dual-readout setup: two squeezers with a 90 degree offset on
    a balanced beam splitter, the same per-mode detection efficiency on
    both paths, and the sampling of both homodyne detectors.
    """
    squeeze_db_a: float = 7.5
    squeeze_db_b: float = 7.5
    efficiency: float = 0.92
    sample_rate_hz: float = 100_000.0
    n_samples: int = 2 ** 17

    def __post_init__(self):
        if self.squeeze_db_a < 0 or self.squeeze_db_b < 0:
            raise InvalidArgumentError("squeeze factors must be >= 0 dB")
        object.__setattr__(self, 'efficiency', check_fraction('efficiency', self.efficiency))
        check_positive('sample_rate_hz', self.sample_rate_hz)
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise InvalidArgumentError(f"n_samples must be a positive integer, got {self.n_samples}")


@dataclass(frozen=True, eq=False)
class QdmReadout:
    """
    Both homodyne readouts of a dense-metrology run.

    trace_a reads the phase quadrature (signal quadrature), trace_b the
    amplitude quadrature. floor_a/floor_b are the analytic noise variances
    relative to shot noise. The veto mask, once set, flags frequency bins
    of trace_b's spectrum.
    """
    trace_a: np.ndarray
    trace_b: np.ndarray
    sample_rate_hz: float
    floor_a: float
    floor_b: float
    veto_f_hz: Optional[np.ndarray] = None
    veto_mask: Optional[np.ndarray] = None

    def __post_init__(self):
        trace_a = _frozen_array(self.trace_a, 'trace_a', 1)
        trace_b = _frozen_array(self.trace_b, 'trace_b', 1)
        if trace_a.shape != trace_b.shape:
            raise InvalidArgumentError("QDM readout traces must have equal length")
        object.__setattr__(self, 'trace_a', trace_a)
        object.__setattr__(self, 'trace_b', trace_b)

    def with_veto(self, f_hz: Sequence[float], mask: Sequence[bool]) -> 'QdmReadout':
        """Return a copy carrying a veto mask over trace_b's frequency bins."""
        mask = np.array(mask, dtype=bool)
        mask.setflags(write=False)
        return replace(self, veto_f_hz=_frozen_array(f_hz, 'veto_f_hz', 1), veto_mask=mask)


@dataclass(frozen=True, eq=False)
class VetoMask:
    """Frequency bins of the amplitude readout flagged as disturbed."""
    f_hz: np.ndarray
    flagged: np.ndarray

    @property
    def any(self) -> bool:
        return bool(np.any(self.flagged))


@dataclass(frozen=True)
class ResourceComparison:
    """
    Extra light needed to improve a shot-noise-limited measurement by a
    squeeze factor: either more coherent photons or a squeezed vacuum.
    """
    extra_coherent_rate: float
    extra_coherent_power_w: float
    squeezed_rate: float
    squeezed_power_w: float
