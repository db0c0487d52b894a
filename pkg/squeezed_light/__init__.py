"""
Squeezed Light: simulation of squeezed states of light and their use in interferometry.

This package models Gaussian states in the covariance-matrix picture and
builds on them the photon statistics, entanglement criteria, interferometer
quantum-noise budgets, phase-sensitivity bounds and homodyne-detection
simulations of squeezed-light experiments.
"""

__version__ = "1.0.0"

from squeezed_light.exceptions import (
    ConfigError,
    DomainError,
    InvalidArgumentError,
    NumericRangeError,
    SqueezedLightError,
)
from squeezed_light.models import (
    ArmCavity,
    BipartiteCovariance,
    FilterCavity,
    FilterCavityInjection,
    FilterCavitySpec,
    FixedSqueeze,
    GaussianState,
    InterferometerConfig,
    NoInjection,
    OptimalFrequencyDependent,
    Pendulum,
    PhaseBoundQuery,
    PhaseStrategy,
    SqueezeSpec,
)
from squeezed_light.gaussian import (
    vacuum_state,
    squeezed_vacuum,
    coherent_state,
    rotate,
    displace,
    apply_loss,
    beam_splitter,
    quadrature_variance,
    minimal_variance_quadrature,
)
from squeezed_light.entanglement import assemble_bipartite, duan_value, reid_epr

__all__ = [
    'SqueezedLightError',
    'InvalidArgumentError',
    'DomainError',
    'NumericRangeError',
    'ConfigError',
    'GaussianState',
    'SqueezeSpec',
    'InterferometerConfig',
    'ArmCavity',
    'Pendulum',
    'FilterCavity',
    'FilterCavitySpec',
    'NoInjection',
    'FixedSqueeze',
    'OptimalFrequencyDependent',
    'FilterCavityInjection',
    'BipartiteCovariance',
    'PhaseBoundQuery',
    'PhaseStrategy',
    'vacuum_state',
    'squeezed_vacuum',
    'coherent_state',
    'rotate',
    'displace',
    'apply_loss',
    'beam_splitter',
    'quadrature_variance',
    'minimal_variance_quadrature',
    'assemble_bipartite',
    'duan_value',
    'reid_epr',
]
