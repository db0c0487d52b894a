"""
Utilities package for squeezed_light.

This package contains constants, validation and small linear-algebra helpers
used throughout the simulation modules.
"""

from squeezed_light.utils.helpers import (
    HBAR,
    C,
    reduce_angle,
    wrap_half_turn,
    check_mode,
    check_fraction,
    check_positive,
    ensure_finite,
    symplectic_form,
    symplectic_eigenvalues,
    rotation_matrix,
    frequency_grid,
    utc_timestamp,
)

__all__ = [
    'HBAR',
    'C',
    'reduce_angle',
    'wrap_half_turn',
    'check_mode',
    'check_fraction',
    'check_positive',
    'ensure_finite',
    'symplectic_form',
    'symplectic_eigenvalues',
    'rotation_matrix',
    'frequency_grid',
    'utc_timestamp',
]
