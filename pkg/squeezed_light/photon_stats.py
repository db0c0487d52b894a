"""
Photon-number statistics of displaced squeezed states.

The displaced squeezed state |alpha, r, theta> = D(alpha) S(r, theta)|0>
has photon-number amplitudes proportional to Hermite polynomials of the
complex argument gamma / sqrt(e^{i theta} sinh 2r), with
gamma = alpha cosh r + alpha* e^{i theta} sinh r. They are evaluated here by
a normalized three-term recurrence that carries a separate log scale, so
tables stay finite far beyond the range of a naive Hermite evaluation.
"""
import cmath
import logging
import math

import numpy as np
from scipy import special, stats

from squeezed_light.exceptions import InvalidArgumentError, NumericRangeError
from squeezed_light.models import PhotonDistribution
from squeezed_light.utils.helpers import ensure_finite

logger = logging.getLogger(__name__)

_RESCALE_HIGH = 1e100
_RESCALE_LOW = 1e-100


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise InvalidArgumentError(f"photon number must be a non-negative integer, got {n!r}")
    return int(n)


def _check_r(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or r < 0:
        raise InvalidArgumentError(f"squeeze parameter r must be >= 0, got {r}")
    return r


def poisson_pmf(mean: float, n: int) -> float:
    """
    Poisson probability e^{-mean} mean^n / n!, evaluated in log space.

    Args:
        mean: Mean photon number, >= 0
        n: Photon number, >= 0

    Returns:
        Probability of n photons
    """
    n = _check_n(n)
    if not mean >= 0:
        raise InvalidArgumentError(f"Poisson mean must be >= 0, got {mean}")
    if mean == 0:
        return 1.0 if n == 0 else 0.0
    return float(np.exp(stats.poisson.logpmf(n, mean)))


def mean_photon_number(alpha: complex, r: float) -> float:
    """Mean photon number e^{-2r}/4 + e^{2r}/4 - 1/2 + |alpha|^2 (independent of theta)."""
    r = _check_r(r)
    return math.exp(-2 * r) / 4 + math.exp(2 * r) / 4 - 0.5 + abs(complex(alpha)) ** 2


def photon_number_variance(alpha: complex, r: float, theta: float) -> float:
    """
    Photon-number variance of |alpha, r, theta>.

    |alpha|^2 [e^{-2r} cos^2(phi - theta/2) + e^{2r} sin^2(phi - theta/2)]
    + 2 sinh^2 r cosh^2 r, with phi = arg(alpha). Below the mean (Fano
    factor < 1) the statistic is sub-Poissonian.
    """
    r = _check_r(r)
    alpha = complex(alpha)
    offset = cmath.phase(alpha) - theta / 2.0
    coherent_part = abs(alpha) ** 2 * (math.exp(-2 * r) * math.cos(offset) ** 2
                                       + math.exp(2 * r) * math.sin(offset) ** 2)
    return coherent_part + 2.0 * (math.sinh(r) * math.cosh(r)) ** 2


def fano_factor(alpha: complex, r: float, theta: float) -> float:
    """Photon-number variance divided by the mean; one for coherent states."""
    mean = mean_photon_number(alpha, r)
    if mean == 0:
        raise InvalidArgumentError("Fano factor is undefined for the vacuum")
    return photon_number_variance(alpha, r, theta) / mean


def gaussian_photon_approximation(mean: float, variance: float, n) -> np.ndarray:
    """
    Normal approximation of a photon-number distribution at large mean.

    Used for bright states (mean of order 10^4) where the distribution is
    almost Gaussian with standard deviation sqrt(variance).
    """
    if not mean > 0 or not variance > 0:
        raise InvalidArgumentError("Gaussian approximation needs positive mean and variance")
    return stats.norm(loc=mean, scale=math.sqrt(variance)).pdf(n)


def _squeezed_vacuum_log_probs(r: float, n_max: int) -> np.ndarray:
    """log P(N) of a squeezed vacuum; odd N have probability zero (-inf)."""
    log_probs = np.full(n_max + 1, -np.inf)
    m = np.arange(n_max // 2 + 1)
    log_probs[0::2] = (special.gammaln(2 * m + 1) + 2 * m * math.log(math.tanh(r))
                       - m * math.log(4.0) - 2 * special.gammaln(m + 1) - math.log(math.cosh(r)))
    return log_probs


def _displaced_squeezed_log_probs(alpha: complex, r: float, theta: float, n_max: int) -> np.ndarray:
    """
    log P(N) for N = 0 ... n_max by the normalized Hermite recurrence.

    With f_N = H_N(z) t^N / sqrt(N!), z = gamma / sqrt(e^{i theta} sinh 2r)
    and t^2 = e^{i theta} tanh(r) / 2, the recurrence
        f_{N+1} = (2 z t f_N - 2 sqrt(N) t^2 f_{N-1}) / sqrt(N+1)
    only involves z t = gamma / (2 cosh r), which stays finite as r -> 0.
    """
    phase = cmath.exp(1j * theta)
    gamma = alpha * math.cosh(r) + alpha.conjugate() * phase * math.sinh(r)
    zt = gamma / (2.0 * math.cosh(r))
    t_sq = 0.5 * phase * math.tanh(r)
    log_prefactor = (-abs(alpha) ** 2 - (alpha.conjugate() ** 2 * phase).real * math.tanh(r)
                     - math.log(math.cosh(r)))

    log_abs_f = np.empty(n_max + 1)
    log_scale = 0.0
    f_prev, f_cur = 0j, 1 + 0j
    log_abs_f[0] = 0.0
    for n in range(n_max):
        f_next = (2.0 * zt * f_cur - 2.0 * math.sqrt(n) * t_sq * f_prev) / math.sqrt(n + 1)
        f_prev, f_cur = f_cur, f_next
        size = max(abs(f_prev), abs(f_cur))
        if size > _RESCALE_HIGH or 0 < size < _RESCALE_LOW:
            f_prev /= size
            f_cur /= size
            log_scale += math.log(size)
        log_abs_f[n + 1] = math.log(abs(f_cur)) + log_scale if f_cur != 0 else -np.inf

    log_probs = log_prefactor + 2.0 * log_abs_f
    if np.any(np.isnan(log_probs)):
        raise NumericRangeError("photon-number recurrence left the floating-point range")
    return log_probs


def _log_probs(alpha: complex, r: float, theta: float, n_max: int) -> np.ndarray:
    if r == 0:
        mean = abs(alpha) ** 2
        if mean == 0:
            log_probs = np.full(n_max + 1, -np.inf)
            log_probs[0] = 0.0
            return log_probs
        return stats.poisson.logpmf(np.arange(n_max + 1), mean)
    if alpha == 0:
        return _squeezed_vacuum_log_probs(r, n_max)
    return _displaced_squeezed_log_probs(alpha, r, theta, n_max)


def photon_pmf(alpha: complex, r: float, theta: float, n: int) -> float:
    """
    Probability of detecting n photons in the pure state |alpha, r, theta>.

    Args:
        alpha: Complex coherent displacement
        r: Squeeze parameter, >= 0
        theta: Squeeze angle in radians
        n: Photon number, >= 0

    Returns:
        P(n); r = 0 is Poissonian and alpha = 0 populates even n only
    """
    n = _check_n(n)
    r = _check_r(r)
    alpha = complex(alpha)
    if r == 0:
        return poisson_pmf(abs(alpha) ** 2, n)
    if alpha == 0:
        if n % 2:
            return 0.0
        return float(np.exp(_squeezed_vacuum_log_probs(r, n)[n]))
    return float(np.exp(_displaced_squeezed_log_probs(alpha, r, theta, n)[n]))


def pmf_table(alpha: complex, r: float, theta: float, n_max: int) -> PhotonDistribution:
    """
    Photon-number distribution for N = 0 ... n_max.

    The caller chooses n_max; with n_max >= mean + 10 standard deviations
    the table holds all but 1e-6 of the probability. Truncated tables are
    returned with a warning logged and `truncated` set.

    Args:
        alpha: Complex coherent displacement
        r: Squeeze parameter
        theta: Squeeze angle in radians
        n_max: Largest photon number in the table

    Returns:
        PhotonDistribution with the analytic mean attached
    """
    n_max = _check_n(n_max)
    r = _check_r(r)
    alpha = complex(alpha)
    probs = ensure_finite('photon-number probabilities', np.exp(_log_probs(alpha, r, theta, n_max)))
    table = PhotonDistribution(
        n_max=n_max,
        probs=probs,
        mean_analytic=mean_photon_number(alpha, r),
        alpha=alpha,
        r=r,
        theta=theta,
    )
    if table.truncated:
        logger.warning("photon table truncated at n_max=%d holds only %.9f of the probability mass",
                       n_max, table.mass)
    return table
