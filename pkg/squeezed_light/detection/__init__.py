"""
Detection package for squeezed_light.

This package contains the time-domain homodyne simulations, the spectrum
analyser emulation and the quantum dense metrology dual readout.
"""

from squeezed_light.detection.homodyne import (
    sample_quadratures,
    scanned_phase_trace,
    simulate_michelson_output,
    matched_filter_snr,
    spectrum_analyzer,
    colored_squeezed_trace,
)
from squeezed_light.detection.qdm import (
    entangled_source,
    readout_state,
    modulation_transfer,
    qdm_dual_readout,
    qdm_veto,
)

__all__ = [
    'sample_quadratures',
    'scanned_phase_trace',
    'simulate_michelson_output',
    'matched_filter_snr',
    'spectrum_analyzer',
    'colored_squeezed_trace',
    'entangled_source',
    'readout_state',
    'modulation_transfer',
    'qdm_dual_readout',
    'qdm_veto',
]
