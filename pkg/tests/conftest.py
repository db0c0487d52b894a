"""Shared fixtures for the squeezed_light test suite."""
import math

import numpy as np
import pytest

from squeezed_light.entanglement import assemble_bipartite
from squeezed_light.gaussian import apply_loss, beam_splitter, displace, rotate, squeezed_vacuum, tensor, vacuum_state
from squeezed_light.models import InterferometerConfig, Pendulum, SqueezeSpec

TEN_DB = SqueezeSpec.from_db(10.0)


@pytest.fixture
def michelson_4kw():
    """4 kW at 1550 nm, 100 g mirrors (reduced mass 50 g), 1 Hz pendulum with Q = 1e7."""
    return InterferometerConfig(
        power_w=4000.0,
        wavelength_m=1550e-9,
        arm_length_m=600.0,
        mirror_mass_kg=0.1,
        pendulum=Pendulum(omega_m=2 * math.pi, q=1e7),
    )


@pytest.fixture
def michelson_1mw():
    """1 MW at 1550 nm with 1 kg mirrors."""
    return InterferometerConfig(power_w=1e6, wavelength_m=1550e-9, arm_length_m=600.0, mirror_mass_kg=1.0)


@pytest.fixture
def s_class():
    """10 dB amplitude- and phase-squeezed vacua on a balanced beam splitter."""
    return assemble_bipartite(squeezed_vacuum(SqueezeSpec.from_db(10.0, 0.0)),
                              squeezed_vacuum(SqueezeSpec.from_db(10.0, math.pi / 2)))


@pytest.fixture
def v_class():
    """10 dB amplitude-squeezed vacuum and plain vacuum on a balanced beam splitter."""
    return assemble_bipartite(squeezed_vacuum(SqueezeSpec.from_db(10.0, 0.0)), vacuum_state(1))


def random_two_mode_state(rng: np.random.Generator):
    """Random physical two-mode state built from squeezers, loss, mixing and displacement."""
    state = tensor(squeezed_vacuum(SqueezeSpec(r=rng.uniform(0, 1.5), theta=rng.uniform(0, math.pi))),
                   squeezed_vacuum(SqueezeSpec(r=rng.uniform(0, 1.5), theta=rng.uniform(0, math.pi))))
    state = apply_loss(state, 0, rng.uniform(0.2, 1.0))
    state = beam_splitter(state, 0, 1, rng.uniform(0, 1), rng.uniform(0, 2 * math.pi))
    state = rotate(state, 1, rng.uniform(0, 2 * math.pi))
    return displace(state, rng.integers(0, 2), rng.normal(), rng.normal())


@pytest.fixture
def random_states():
    rng = np.random.default_rng(20240611)
    return [random_two_mode_state(rng) for _ in range(100)]
