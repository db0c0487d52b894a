"""
Quantum dense metrology: entangled dual-quadrature readout.

Two squeezed beams with a 90 degree offset are entangled on a balanced
beam splitter. One beam picks up the interferometer modulation, the other
serves as reference; recombining them on a second beam splitter and
reading the phase quadrature of one output and the amplitude quadrature
of the other gives two readouts whose noise is squeezed at the same time.

The signal lives in the phase quadrature only, so the amplitude readout
sees nothing but disturbances and can veto them.
"""
import logging
import math
from typing import Optional

import numpy as np

from squeezed_light.detection.homodyne import spectrum_analyzer
from squeezed_light.exceptions import InvalidArgumentError
from squeezed_light.gaussian import apply_loss, beam_splitter, beam_splitter_matrix, squeezed_vacuum, tensor
from squeezed_light.models import (
    GaussianState,
    HomodyneTrace,
    QdmDisturbance,
    QdmReadout,
    QdmScenario,
    QdmSignal,
    SqueezeSpec,
    VetoMask,
)
from squeezed_light.utils.helpers import check_positive

logger = logging.getLogger(__name__)

# MAD to standard deviation for Gaussian data
_MAD_TO_SIGMA = 1.4826

# quadrature indices of the two readouts: Y of output 0, X of output 1
_READOUT = [1, 2]

# quadrature indices of the modulated beam (mode 0) before recombination
_MODULATED = [0, 1]


def entangled_source(scenario: QdmScenario) -> GaussianState:
    """
    Two-mode entangled state of the dual-readout scheme.

    A phase-squeezed beam (mode 0) and an amplitude-squeezed beam (mode 1)
    are overlapped on a balanced beam splitter.
    """
    phase_squeezed = squeezed_vacuum(SqueezeSpec.from_db(scenario.squeeze_db_a, theta=math.pi / 2))
    amplitude_squeezed = squeezed_vacuum(SqueezeSpec.from_db(scenario.squeeze_db_b, theta=0.0))
    return beam_splitter(tensor(phase_squeezed, amplitude_squeezed), 0, 1, 0.5, 0.0)


def readout_state(scenario: QdmScenario) -> GaussianState:
    """
    Noise state at the two homodyne detectors.

    The entangled beams are recombined with opposite phase, which undoes
    the entangling beam splitter, and both paths suffer the scenario's
    detection efficiency.
    """
    recombined = beam_splitter(entangled_source(scenario), 0, 1, 0.5, math.pi)
    lossy = apply_loss(recombined, 0, scenario.efficiency)
    return apply_loss(lossy, 1, scenario.efficiency)


def modulation_transfer(scenario: QdmScenario) -> np.ndarray:
    """
    2x2 map from the modulation (dX, dY) of the measurement beam to the
    mean of (readout a, readout b).

    Each readout sees half of the modulation power, scaled by the
    amplitude efficiency.
    """
    recombine = beam_splitter_matrix(2, 0, 1, 0.5, math.pi)
    return math.sqrt(scenario.efficiency) * recombine[np.ix_(_READOUT, _MODULATED)]


def qdm_dual_readout(signal: QdmSignal, disturbance: Optional[QdmDisturbance] = None,
                     scenario: QdmScenario = QdmScenario(), seed: Optional[int] = None) -> QdmReadout:
    """
    Simulate both homodyne readouts of a dense-metrology run.

    Args:
        signal: Phase-quadrature signal tone
        disturbance: Optional tone along an arbitrary phase-space angle
        scenario: Squeeze factors, efficiency and sampling
        seed: PRNG seed

    Returns:
        QdmReadout with the phase readout (trace_a), the amplitude readout
        (trace_b) and their analytic noise floors relative to shot noise
    """
    fs = scenario.sample_rate_hz
    t = np.arange(scenario.n_samples) / fs
    for name, freq in (('signal', signal.frequency_hz),
                       ('disturbance', None if disturbance is None else disturbance.frequency_hz)):
        if freq is not None and not 0 <= freq < fs / 2:
            raise InvalidArgumentError(f"{name} frequency {freq} Hz aliases at {fs} Hz sampling")

    d_x = np.zeros_like(t)
    d_y = signal.amplitude * np.sin(2 * math.pi * signal.frequency_hz * t)
    if disturbance is not None:
        tone = disturbance.amplitude * np.sin(2 * math.pi * disturbance.frequency_hz * t)
        d_x = d_x + math.cos(disturbance.angle_rad) * tone
        d_y = d_y + math.sin(disturbance.angle_rad) * tone

    noise_cov = readout_state(scenario).cov[np.ix_(_READOUT, _READOUT)]
    rng = np.random.default_rng(seed)
    noise = rng.multivariate_normal(np.zeros(2), noise_cov, size=scenario.n_samples)
    means = modulation_transfer(scenario) @ np.vstack([d_x, d_y])

    logger.debug("QDM floors: phase readout %.4f, amplitude readout %.4f of shot noise",
                 noise_cov[0, 0], noise_cov[1, 1])
    return QdmReadout(
        trace_a=means[0] + noise[:, 0],
        trace_b=means[1] + noise[:, 1],
        sample_rate_hz=fs,
        floor_a=float(noise_cov[0, 0]),
        floor_b=float(noise_cov[1, 1]),
    )


def qdm_veto(readout: QdmReadout, threshold_sigma: float = 5.0,
             rbw_hz: Optional[float] = None) -> VetoMask:
    """
    Flag frequency bins where the amplitude readout rises above its own floor.

    The floor and its spread are the median and the scaled median absolute
    deviation of trace_b's spectrum, so isolated disturbance tones do not
    bias them. trace_a is never inspected.

    Args:
        readout: Dual readout
        threshold_sigma: Detection threshold in robust standard deviations
        rbw_hz: Resolution bandwidth; defaults to sample_rate / 256

    Returns:
        VetoMask over trace_b's frequency bins
    """
    threshold_sigma = check_positive('threshold_sigma', threshold_sigma)
    fs = readout.sample_rate_hz
    rbw_hz = fs / 256 if rbw_hz is None else rbw_hz
    trace_b = HomodyneTrace(samples=readout.trace_b, sample_rate_hz=fs, lo_phase=0.0,
                            source="QDM amplitude readout", seed=None)
    spectrum = spectrum_analyzer(trace_b, rbw_hz)
    floor = float(np.median(spectrum.values))
    spread = _MAD_TO_SIGMA * float(np.median(np.abs(spectrum.values - floor)))
    flagged = (spectrum.values - floor) > threshold_sigma * spread
    logger.debug("veto flags %d of %d bins at %.1f sigma", int(flagged.sum()), flagged.size, threshold_sigma)
    return VetoMask(f_hz=spectrum.f_hz, flagged=flagged)
