"""
Noise-budget package for squeezed_light.

This package contains the interferometer quantum-noise spectra, the
ponderomotive transform of injected states, and cavity models for
filter cavities and squeezed-light sources.
"""

from squeezed_light.noise.budget import (
    h_fp,
    shot_asd,
    rpn_asd,
    sql_asd,
    kappa,
    omega_sql,
    optimal_power,
    mechanical_susceptibility,
    output_phase_variance,
    total_quantum_noise_asd,
    quadrature_sum_asd,
    total_noise_form_discrepancy,
    noise_spectrum,
)
from squeezed_light.noise.ponderomotive import (
    ponderomotive_transform,
    optimal_input_angle,
    ponderomotive_squeezing_db,
    readout_variance_vs_lo_angle,
    readout_signal_gain,
    readout_snr,
    optimal_readout_angle,
)
from squeezed_light.noise.cavities import (
    filter_cavity_rotation,
    intracavity_squeeze_limit,
    opo_squeezing_spectrum,
    opo_squeezing_db,
)

__all__ = [
    'h_fp',
    'shot_asd',
    'rpn_asd',
    'sql_asd',
    'kappa',
    'omega_sql',
    'optimal_power',
    'mechanical_susceptibility',
    'output_phase_variance',
    'total_quantum_noise_asd',
    'quadrature_sum_asd',
    'total_noise_form_discrepancy',
    'noise_spectrum',
    'ponderomotive_transform',
    'optimal_input_angle',
    'ponderomotive_squeezing_db',
    'readout_variance_vs_lo_angle',
    'readout_signal_gain',
    'readout_snr',
    'optimal_readout_angle',
    'filter_cavity_rotation',
    'intracavity_squeeze_limit',
    'opo_squeezing_spectrum',
    'opo_squeezing_db',
]
