import math

import numpy as np
import pytest
from scipy import stats

from squeezed_light.exceptions import InvalidArgumentError
from squeezed_light.gaussian import apply_loss, coherent_state, displace, squeezed_vacuum, vacuum_state
from squeezed_light.models import SqueezeSpec
from squeezed_light.phase_space import (
    db_from_squeeze_parameter,
    db_from_variance,
    grid_normalization,
    lossy_squeezing_db,
    marginal_density,
    marginal_from_grid,
    squeeze_parameter_from_db,
    variance_from_db,
    wigner_grid,
    wigner_value,
)


def test_wigner_peak_of_pure_states():
    assert wigner_value(vacuum_state(1), 0, 0.0, 0.0) == pytest.approx(1 / (2 * math.pi))
    squeezed = displace(squeezed_vacuum(SqueezeSpec.from_db(10.0, 0.6)), 0, 1.0, -2.0)
    assert wigner_value(squeezed, 0, 1.0, -2.0) == pytest.approx(1 / (2 * math.pi))


def test_wigner_peak_drops_for_mixed_state():
    lossy = apply_loss(squeezed_vacuum(SqueezeSpec.from_db(10.0)), 0, 0.5)

    assert wigner_value(lossy, 0, 0.0, 0.0) < 1 / (2 * math.pi)


@pytest.mark.parametrize('vartheta', [0.0, 0.4, math.pi / 2])
def test_marginal_density_is_normal(vartheta):
    state = displace(squeezed_vacuum(SqueezeSpec.from_db(6.0, 0.3)), 0, 0.5, 1.5)
    loc = 0.5 * math.cos(vartheta) + 1.5 * math.sin(vartheta)
    cov = state.cov
    var = (math.cos(vartheta) ** 2 * cov[0, 0] + 2 * math.sin(vartheta) * math.cos(vartheta) * cov[0, 1]
           + math.sin(vartheta) ** 2 * cov[1, 1])

    for value in (-2.0, 0.0, 1.0, 3.0):
        expected = stats.norm(loc=loc, scale=math.sqrt(var)).pdf(value)
        assert marginal_density(state, 0, vartheta, value) == pytest.approx(expected)


def test_db_conversions():
    assert db_from_variance(0.1) == pytest.approx(10.0)
    assert db_from_variance(10.0) == pytest.approx(-10.0)
    assert variance_from_db(3.0) == pytest.approx(0.501187, rel=1e-5)
    assert db_from_squeeze_parameter(squeeze_parameter_from_db(7.5)) == pytest.approx(7.5)
    assert math.exp(-2 * squeeze_parameter_from_db(10.0)) == pytest.approx(0.1)


@pytest.mark.parametrize('var', [0.0, -1.0])
def test_db_of_non_positive_variance_raises(var):
    with pytest.raises(InvalidArgumentError):
        db_from_variance(var)


def test_lossy_squeezing_levels():
    squeezing, anti = lossy_squeezing_db(squeeze_parameter_from_db(10.0), 0.9)

    assert squeezing == pytest.approx(-10 * math.log10(0.19))
    assert anti == pytest.approx(-10 * math.log10(9.1))


def test_lossy_squeezing_without_loss():
    squeezing, anti = lossy_squeezing_db(squeeze_parameter_from_db(12.0), 1.0)

    assert squeezing == pytest.approx(12.0)
    assert anti == pytest.approx(-12.0)


class TestWignerGrid:
    @pytest.fixture(autouse=True)
    def setup(self):
        self.state = squeezed_vacuum(SqueezeSpec.from_db(10.0, math.pi / 4))
        self.grid = wigner_grid(self.state, points=257)

    def test_shape_and_axes(self):
        assert self.grid.values.shape == (257, 257)
        assert self.grid.x_axis[-1] == pytest.approx(6 * math.sqrt(5.05))
        assert self.grid.y_axis[0] == pytest.approx(-6 * math.sqrt(5.05))

    def test_normalization(self):
        assert grid_normalization(self.grid) == pytest.approx(1.0, abs=1e-4)

    def test_marginal_matches_analytic_density(self):
        numeric = marginal_from_grid(self.grid)
        central = np.abs(self.grid.x_axis) <= 3 * math.sqrt(5.05)
        expected = [marginal_density(self.state, 0, 0.0, x) for x in self.grid.x_axis[central]]

        assert np.allclose(numeric[central], expected, rtol=1e-3, atol=1e-6)

    def test_frame_is_long_format(self):
        frame = self.grid.to_frame()

        assert list(frame.columns) == ['x', 'y', 'w']
        assert len(frame) == 257 * 257


def test_grid_is_centred_on_displacement():
    grid = wigner_grid(coherent_state(2 + 1j), points=65)

    assert grid.x_axis[32] == pytest.approx(4.0)
    assert grid.y_axis[32] == pytest.approx(2.0)
    assert grid_normalization(grid) == pytest.approx(1.0, abs=1e-4)


def test_grid_needs_two_points():
    with pytest.raises(InvalidArgumentError):
        wigner_grid(vacuum_state(1), points=1)
