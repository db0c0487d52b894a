import math

import numpy as np
import pytest

from squeezed_light.detection import (
    entangled_source,
    modulation_transfer,
    qdm_dual_readout,
    qdm_veto,
    readout_state,
)
from squeezed_light.entanglement import duan_value
from squeezed_light.exceptions import InvalidArgumentError
from squeezed_light.models import BipartiteCovariance, QdmDisturbance, QdmReadout, QdmScenario, QdmSignal

DEFAULT_FLOOR = 0.92 * 10 ** -0.75 + 0.08
SILENT = QdmSignal(amplitude=0.0, frequency_hz=5000.0)


def _amplitude(trace, freq, fs):
    template = np.sin(2 * math.pi * freq * np.arange(trace.size) / fs)
    return float(trace @ template / (template @ template))


def test_default_noise_floors():
    readout = qdm_dual_readout(SILENT, seed=1)

    assert readout.floor_a == pytest.approx(DEFAULT_FLOOR, abs=1e-9)
    assert readout.floor_b == pytest.approx(DEFAULT_FLOOR, abs=1e-9)
    assert 10 * math.log10(readout.floor_a) < -6.0


def test_lossless_15db_floors():
    readout = qdm_dual_readout(SILENT, scenario=QdmScenario(squeeze_db_a=15.0, squeeze_db_b=15.0, efficiency=1.0),
                               seed=2)

    assert readout.floor_a == pytest.approx(10 ** -1.5)
    assert readout.floor_b == pytest.approx(10 ** -1.5)


def test_sample_variances_match_floors():
    readout = qdm_dual_readout(SILENT, seed=3)
    tol = 5 * math.sqrt(2.0 / readout.trace_a.size)

    assert np.var(readout.trace_a) == pytest.approx(readout.floor_a, rel=tol)
    assert np.var(readout.trace_b) == pytest.approx(readout.floor_b, rel=tol)
    assert abs(np.corrcoef(readout.trace_a, readout.trace_b)[0, 1]) < tol


def test_source_is_entangled():
    source = BipartiteCovariance.from_state(entangled_source(QdmScenario()))

    assert duan_value(source) < 2.0


def test_readout_state_is_separable_product():
    cov = readout_state(QdmScenario()).cov

    assert np.allclose(cov[0:2, 2:4], 0.0, atol=1e-12)


def test_modulation_transfer_splits_quadratures():
    transfer = modulation_transfer(QdmScenario(efficiency=0.5))

    assert np.allclose(transfer, [[0.0, 0.5], [0.5, 0.0]], atol=1e-12)


class TestTones:
    fs = 1e5

    def test_signal_reaches_phase_readout_only(self):
        readout = qdm_dual_readout(QdmSignal(amplitude=0.5, frequency_hz=5000.0), seed=4)

        assert _amplitude(readout.trace_a, 5000.0, self.fs) == pytest.approx(0.5 * math.sqrt(0.46), abs=0.01)
        assert _amplitude(readout.trace_b, 5000.0, self.fs) == pytest.approx(0.0, abs=0.01)

    def test_amplitude_disturbance_reaches_amplitude_readout_only(self):
        disturbance = QdmDisturbance(amplitude=1.0, angle_rad=0.0, frequency_hz=12_000.0)
        readout = qdm_dual_readout(SILENT, disturbance, seed=5)

        assert _amplitude(readout.trace_b, 12_000.0, self.fs) == pytest.approx(math.sqrt(0.46), abs=0.01)
        assert _amplitude(readout.trace_a, 12_000.0, self.fs) == pytest.approx(0.0, abs=0.01)

    def test_seed_reproducibility(self):
        first = qdm_dual_readout(SILENT, seed=6)
        second = qdm_dual_readout(SILENT, seed=6)

        assert np.array_equal(first.trace_a, second.trace_a)
        assert np.array_equal(first.trace_b, second.trace_b)

    def test_aliasing_rejected(self):
        with pytest.raises(InvalidArgumentError):
            qdm_dual_readout(QdmSignal(amplitude=0.5, frequency_hz=6e4))
        with pytest.raises(InvalidArgumentError):
            qdm_dual_readout(SILENT, QdmDisturbance(amplitude=1.0, angle_rad=0.0, frequency_hz=5e4))


class TestVeto:
    signal = QdmSignal(amplitude=0.5, frequency_hz=5000.0)

    def test_clean_run_is_not_vetoed(self):
        mask = qdm_veto(qdm_dual_readout(self.signal, seed=7))

        assert not mask.any

    @pytest.mark.parametrize('angle', [0.0, math.radians(30.0)])
    def test_disturbance_is_flagged(self, angle):
        disturbance = QdmDisturbance(amplitude=1.0, angle_rad=angle, frequency_hz=12_000.0)
        mask = qdm_veto(qdm_dual_readout(self.signal, disturbance, seed=8))
        df = mask.f_hz[1] - mask.f_hz[0]
        offset = np.abs(mask.f_hz - 12_000.0)

        assert np.any(mask.flagged[offset < 2 * df])
        assert not np.any(mask.flagged[offset > 6 * df])

    def test_phase_disturbance_cannot_be_vetoed(self):
        disturbance = QdmDisturbance(amplitude=1.0, angle_rad=math.pi / 2, frequency_hz=12_000.0)
        mask = qdm_veto(qdm_dual_readout(self.signal, disturbance, seed=9))

        assert not mask.any

    def test_mask_attaches_to_readout(self):
        readout = qdm_dual_readout(self.signal, seed=10)
        mask = qdm_veto(readout)

        vetoed = readout.with_veto(mask.f_hz, mask.flagged)

        assert vetoed.veto_mask.shape == mask.f_hz.shape
        assert readout.veto_mask is None

    def test_threshold_must_be_positive(self):
        with pytest.raises(InvalidArgumentError):
            qdm_veto(qdm_dual_readout(self.signal, seed=11), threshold_sigma=0.0)


def test_readout_traces_must_match():
    with pytest.raises(InvalidArgumentError):
        QdmReadout(trace_a=np.zeros(4), trace_b=np.zeros(5), sample_rate_hz=1.0, floor_a=1.0, floor_b=1.0)
