import logging
import math

import numpy as np
import pytest

from squeezed_light.entanglement import (
    assemble_bipartite,
    criteria_report,
    duan_value,
    format_report,
    reid_epr,
    swap_parties,
)
from squeezed_light.exceptions import InvalidArgumentError
from squeezed_light.gaussian import apply_loss, squeezed_vacuum, tensor, two_mode_squeezed_vacuum, vacuum_state
from squeezed_light.models import BipartiteCovariance, SqueezeSpec


def test_s_class_values(s_class):
    assert duan_value(s_class) == pytest.approx(0.2, abs=1e-9)
    assert reid_epr(s_class) == pytest.approx((1 / 5.05) ** 2, abs=1e-9)


def test_v_class_values(v_class):
    assert duan_value(v_class) == pytest.approx(1.1, abs=1e-9)
    assert reid_epr(v_class) == pytest.approx(0.1 / 0.55 * 10 / 5.5, abs=1e-9)


def test_two_vacua_sit_on_the_bounds():
    bp = assemble_bipartite(vacuum_state(1), vacuum_state(1))

    assert duan_value(bp) == pytest.approx(2.0)
    assert reid_epr(bp) == pytest.approx(1.0)

    report = criteria_report(bp)
    assert not report['duan_pass']
    assert not report['reid_pass']
    assert report['consistent']


def test_duan_is_independent_of_sign_convention(s_class):
    flipped = BipartiteCovariance(cov=s_class.cov * np.outer([1, 1, -1, -1], [1, 1, -1, -1]))

    assert duan_value(flipped) == pytest.approx(duan_value(s_class))


def test_swapping_symmetric_state_keeps_values(s_class):
    swapped = swap_parties(s_class)

    assert duan_value(swapped) == pytest.approx(duan_value(s_class))
    assert reid_epr(swapped) == pytest.approx(reid_epr(s_class))


@pytest.mark.parametrize('eta_sq', np.linspace(0.05, 1.0, 20))
def test_reid_pass_implies_duan_pass(eta_sq):
    squeezer = SqueezeSpec.from_db(12.0)
    a = apply_loss(squeezed_vacuum(squeezer), 0, eta_sq)
    for b in (apply_loss(squeezed_vacuum(SqueezeSpec.from_db(12.0, math.pi / 2)), 0, eta_sq), vacuum_state(1)):
        report = criteria_report(assemble_bipartite(a, b))
        assert report['consistent']


def test_loss_degrades_s_class_duan():
    values = []
    for eta_sq in (1.0, 0.8, 0.5):
        a = apply_loss(squeezed_vacuum(SqueezeSpec.from_db(10.0)), 0, eta_sq)
        b = apply_loss(squeezed_vacuum(SqueezeSpec.from_db(10.0, math.pi / 2)), 0, eta_sq)
        values.append(duan_value(assemble_bipartite(a, b)))

    assert values == sorted(values)
    # Duan value of symmetric loss is eta_sq * 0.2 + (1 - eta_sq) * 2
    assert values[2] == pytest.approx(1.1)


def test_asymmetric_loss_is_flagged_inconsistent(caplog):
    bright = two_mode_squeezed_vacuum(2.0)
    bp = BipartiteCovariance.from_state(apply_loss(bright, 1, 0.5))

    with caplog.at_level(logging.WARNING, logger='squeezed_light.entanglement'):
        report = criteria_report(bp)

    assert report['reid_pass']
    assert not report['duan_pass']
    assert not report['consistent']
    assert 'Reid' in caplog.text


def test_format_report(s_class, v_class):
    text = format_report(criteria_report(s_class))
    assert text.count('PASS') == 2

    vacua = format_report(criteria_report(assemble_bipartite(vacuum_state(1), vacuum_state(1))))
    assert vacua.count('FAIL') == 2


def test_multimode_input_raises():
    with pytest.raises(InvalidArgumentError):
        assemble_bipartite(vacuum_state(2), vacuum_state(1))


def test_bipartite_requires_two_modes():
    with pytest.raises(InvalidArgumentError):
        BipartiteCovariance.from_state(tensor(vacuum_state(1), vacuum_state(2)))
