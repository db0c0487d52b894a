"""
Balanced-homodyne detection module.

This module draws time series of homodyne measurements of Gaussian states
(constant or ramped local-oscillator phase), simulates a squeezed-light
enhanced Michelson output with a signal tone, and emulates a spectrum
analyser on the resulting traces.

The local oscillator is assumed much stronger than the signal field, so
each sample is a quadrature eigenvalue in vacuum units and LO noise is
neglected. Identical inputs and seed give identical traces.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from scipy import fft, signal

from squeezed_light.exceptions import InvalidArgumentError
from squeezed_light.gaussian import quadrature_mean, quadrature_variance
from squeezed_light.models import GaussianState, HomodyneTrace, PhaseScan, SpectrumSeries, SpectrumUnits
from squeezed_light.noise.cavities import opo_squeezing_spectrum
from squeezed_light.phase_space import variance_from_db
from squeezed_light.utils.helpers import check_mode, check_positive

logger = logging.getLogger(__name__)


def _check_count(name: str, value) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise InvalidArgumentError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def sample_quadratures(state: GaussianState, mode: int, vartheta: float, n_samples: int,
                       seed: Optional[int] = None, sample_rate_hz: float = 1.0) -> HomodyneTrace:
    """
    Sample homodyne measurements of one mode at a fixed LO phase.

    Args:
        state: Gaussian state being measured
        mode: Mode index
        vartheta: Local-oscillator phase (quadrature angle) in radians
        n_samples: Number of measurement intervals
        seed: PRNG seed
        sample_rate_hz: Rate at which the intervals are sampled

    Returns:
        HomodyneTrace of i.i.d. Gaussian draws
    """
    mode = check_mode(state.n_modes, mode)
    n_samples = _check_count('n_samples', n_samples)
    rng = np.random.default_rng(seed)
    loc = quadrature_mean(state, mode, vartheta)
    scale = math.sqrt(quadrature_variance(state, mode, vartheta))
    samples = rng.normal(loc, scale, n_samples)
    return HomodyneTrace(
        samples=samples,
        sample_rate_hz=sample_rate_hz,
        lo_phase=float(vartheta),
        source=f"mode {mode} of a {state.n_modes}-mode Gaussian state",
        seed=seed,
    )


def scanned_phase_trace(state: GaussianState, mode: int, phase_ramp: Tuple[float, float],
                        n_samples: int, window: int, seed: Optional[int] = None,
                        sample_rate_hz: float = 1.0) -> PhaseScan:
    """
    Homodyne trace with a linearly ramped LO phase, reduced to a rolling variance.

    Every sample is drawn at its own LO phase; the variance over a centred
    window of `window` samples is reported in dB relative to vacuum, so a
    5 dB squeezed state oscillates between about -5 dB and +5 dB with
    period pi in the ramp phase.

    Args:
        state: Gaussian state being measured
        mode: Mode index
        phase_ramp: (start, stop) LO phase in radians
        n_samples: Number of samples
        window: Rolling-variance window in samples
        seed: PRNG seed
        sample_rate_hz: Sampling rate

    Returns:
        PhaseScan at the window centres
    """
    mode = check_mode(state.n_modes, mode)
    n_samples = _check_count('n_samples', n_samples)
    window = _check_count('window', window)
    if window < 2:
        raise InvalidArgumentError("rolling variance needs a window of at least 2 samples")
    if window > n_samples:
        raise InvalidArgumentError(f"window ({window}) is larger than the trace ({n_samples} samples)")
    start, stop = (float(p) for p in phase_ramp)

    phases = np.linspace(start, stop, n_samples)
    cos, sin = np.cos(phases), np.sin(phases)
    block = state.block(mode)
    mean = state.mode_mean(mode)
    loc = cos * mean[0] + sin * mean[1]
    variance = cos ** 2 * block[0, 0] + 2 * cos * sin * block[0, 1] + sin ** 2 * block[1, 1]

    rng = np.random.default_rng(seed)
    samples = rng.normal(loc, np.sqrt(variance))
    frame = pd.DataFrame({
        't_s': np.arange(n_samples) / check_positive('sample_rate_hz', sample_rate_hz),
        'lo_phase_rad': phases,
        'variance': pd.Series(samples).rolling(window, center=True).var(),
    }).dropna()
    logger.debug("scanned %d samples over [%.3f, %.3f] rad with window %d", n_samples, start, stop, window)
    return PhaseScan(
        time_s=frame['t_s'].to_numpy(),
        lo_phase_rad=frame['lo_phase_rad'].to_numpy(),
        variance_db=10.0 * np.log10(frame['variance'].to_numpy()),
    )


def simulate_michelson_output(signal_amp: float, signal_freq: float, squeeze_db: float,
                              duration: float, sample_rate: float,
                              seed: Optional[int] = None) -> HomodyneTrace:
    """
    Signal-port trace of a squeezed-light Michelson: a sinusoid in white noise.

    Args:
        signal_amp: Signal amplitude in vacuum standard deviations
        signal_freq: Signal frequency in Hz, below the Nyquist frequency
        squeeze_db: Squeeze factor of the noise (0 dB = shot noise)
        duration: Trace length in seconds
        sample_rate: Sampling rate in Hz
        seed: PRNG seed

    Returns:
        HomodyneTrace of the phase quadrature
    """
    sample_rate = check_positive('sample_rate', sample_rate)
    duration = check_positive('duration', duration)
    if not 0 <= signal_freq < sample_rate / 2:
        raise InvalidArgumentError(
            f"signal frequency {signal_freq} Hz aliases at a sample rate of {sample_rate} Hz")
    n_samples = _check_count('number of samples', round(duration * sample_rate))
    rng = np.random.default_rng(seed)
    t = np.arange(n_samples) / sample_rate
    noise = math.sqrt(variance_from_db(squeeze_db)) * rng.standard_normal(n_samples)
    return HomodyneTrace(
        samples=signal_amp * np.sin(2 * math.pi * signal_freq * t) + noise,
        sample_rate_hz=sample_rate,
        lo_phase=math.pi / 2,
        source=f"Michelson signal port, {squeeze_db:g} dB squeezed",
        seed=seed,
    )


def matched_filter_snr(trace: HomodyneTrace, signal_freq: float,
                       noise_variance: Optional[float] = None) -> float:
    """
    Detection statistic of a sinusoid of known frequency and phase.

    Projects the trace onto sin(2 pi f t) and divides by the noise standard
    deviation of that projection. Without noise_variance, the variance of
    the residual after removing the fitted tone is used.
    """
    template = np.sin(2 * math.pi * signal_freq * trace.time_s)
    energy = float(template @ template)
    if energy == 0:
        raise InvalidArgumentError("template is zero on this time axis")
    projection = float(trace.samples @ template)
    if noise_variance is None:
        residual = trace.samples - projection / energy * template
        noise_variance = float(np.var(residual, ddof=1))
    check_positive('noise_variance', noise_variance)
    return projection / math.sqrt(noise_variance * energy)


def spectrum_analyzer(trace: HomodyneTrace, rbw_hz: float) -> SpectrumSeries:
    """
    Averaged-periodogram noise power of a trace relative to shot noise.

    Welch's method with Hann-windowed segments of sample_rate / rbw samples
    (50 % overlap); rbw is the bin spacing. The power spectral density is
    divided by that of unit-variance white noise, so vacuum reads 1 (0 dB).
    The DC and Nyquist bins are dropped.

    Args:
        trace: Homodyne trace
        rbw_hz: Resolution bandwidth, at most sample_rate / 4

    Returns:
        Dimensionless SpectrumSeries of noise power relative to vacuum
    """
    fs = trace.sample_rate_hz
    rbw_hz = check_positive('rbw_hz', rbw_hz)
    if rbw_hz > fs / 4:
        raise InvalidArgumentError(f"rbw ({rbw_hz} Hz) must not exceed a quarter of the sample rate ({fs} Hz)")
    nperseg = int(round(fs / rbw_hz))
    if nperseg > trace.n_samples:
        raise InvalidArgumentError(
            f"rbw {rbw_hz} Hz needs {nperseg} samples per segment but the trace has {trace.n_samples}")
    f_hz, psd = signal.welch(trace.samples, fs=fs, window='hann', nperseg=nperseg,
                             detrend=False, scaling='density')
    keep = slice(1, -1) if nperseg % 2 == 0 else slice(1, None)
    logger.debug("spectrum: %d bins of %.6g Hz, %d samples", nperseg // 2, fs / nperseg, trace.n_samples)
    return SpectrumSeries(f_hz=f_hz[keep], values=psd[keep] * fs / 2.0, units=SpectrumUnits.DIMENSIONLESS)


def colored_squeezed_trace(pump_ratio_x: float, gamma: float, eta_total: float,
                           quadrature: str = 'squeezed', n_samples: int = 2 ** 16,
                           sample_rate: float = 1.0e6, seed: Optional[int] = None) -> HomodyneTrace:
    """
    Homodyne trace of an OPO output with its Lorentzian squeezing spectrum.

    White vacuum noise is shaped in the frequency domain by sqrt(V(Omega))
    from opo_squeezing_spectrum, so the trace's spectrum follows the
    squeezed (or anti-squeezed) variance at every frequency.

    Args:
        pump_ratio_x: Pump amplitude relative to threshold, in [0, 1)
        gamma: OPO half bandwidth in rad/s
        eta_total: Total detection efficiency
        quadrature: 'squeezed' or 'antisqueezed'
        n_samples: Number of samples
        sample_rate: Sampling rate in Hz
        seed: PRNG seed

    Returns:
        HomodyneTrace with colored noise
    """
    if quadrature not in ('squeezed', 'antisqueezed'):
        raise InvalidArgumentError(f"quadrature must be 'squeezed' or 'antisqueezed', got {quadrature!r}")
    n_samples = _check_count('n_samples', n_samples)
    sample_rate = check_positive('sample_rate', sample_rate)
    rng = np.random.default_rng(seed)
    white = rng.standard_normal(n_samples)
    omega = 2 * math.pi * fft.rfftfreq(n_samples, d=1.0 / sample_rate)
    squeezed, antisqueezed = opo_squeezing_spectrum(pump_ratio_x, gamma, eta_total, omega)
    variance = squeezed if quadrature == 'squeezed' else antisqueezed
    samples = fft.irfft(fft.rfft(white) * np.sqrt(variance), n=n_samples)
    return HomodyneTrace(
        samples=samples,
        sample_rate_hz=sample_rate,
        lo_phase=0.0 if quadrature == 'squeezed' else math.pi / 2,
        source=f"OPO output at pump ratio {pump_ratio_x:g}, {quadrature} quadrature",
        seed=seed,
    )
