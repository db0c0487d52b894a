"""
Command implementations behind the squeezed-light CLI.

Each cmd_* function turns a validated RunConfig into a CommandResult: a
pandas table for the CSV/JSON artefact plus command-specific metadata and
warnings. Writing the artefacts is handled by write_result so every
subcommand shares the same CSV dialect and JSON envelope.
"""
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from squeezed_light import __version__
from squeezed_light.config import RunConfig
from squeezed_light.detection import (
    matched_filter_snr,
    qdm_dual_readout,
    qdm_veto,
    sample_quadratures,
    scanned_phase_trace,
    simulate_michelson_output,
    spectrum_analyzer,
)
from squeezed_light.entanglement import assemble_bipartite, criteria_report, format_report
from squeezed_light.exceptions import ConfigError
from squeezed_light.gaussian import (
    apply_loss,
    displace,
    quadrature_variance,
    squeezed_vacuum,
    vacuum_state,
)
from squeezed_light.models import (
    ArmCavity,
    FilterCavity,
    FilterCavityInjection,
    FilterCavitySpec,
    FixedSqueeze,
    GaussianState,
    HomodyneTrace,
    InterferometerConfig,
    NoInjection,
    Normalization,
    OptimalFrequencyDependent,
    Pendulum,
    QdmDisturbance,
    QdmScenario,
    QdmSignal,
    SqueezeSpec,
    Susceptibility,
)
from squeezed_light.noise import noise_spectrum, omega_sql, total_noise_form_discrepancy
from squeezed_light.phase_space import grid_normalization, wigner_grid
from squeezed_light.photon_stats import pmf_table
from squeezed_light.utils.helpers import HBAR, C, frequency_grid, utc_timestamp

logger = logging.getLogger(__name__)

# (label, alpha, r, theta) of the default photon-statistics panels
DEFAULT_PHOTON_PANELS = [
    ('a', 0j, 0.5, 0.0),
    ('b', 0j, 1.0, 0.0),
    ('c', 0j, 2.0, 0.0),
    ('d', 4 + 0j, 1.0, 0.0),
    ('e', 4 + 0j, 1.0, math.pi / 2),
    ('f', 4 + 0j, 0.0, 0.0),
]


@dataclass
class CommandResult:
    """Table and metadata produced by one subcommand."""
    frame: pd.DataFrame
    metadata: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    report: Optional[str] = None


def build_interferometer(config: RunConfig) -> InterferometerConfig:
    """Interferometer model from the [interferometer], [arm_cavity] and [pendulum] sections."""
    ifo = config.section('interferometer')
    t_fp = config.get('arm_cavity', 't_fp')
    omega_m = config.get('pendulum', 'omega_m')
    return InterferometerConfig(
        power_w=ifo['power_w'],
        wavelength_m=ifo['wavelength_m'],
        arm_length_m=ifo['arm_length_m'],
        mirror_mass_kg=ifo['mirror_mass_kg'],
        arm_cavity=None if t_fp is None else ArmCavity(t_fp=t_fp),
        pendulum=None if omega_m is None else Pendulum(omega_m=omega_m, q=config.get('pendulum', 'q')),
    )


def build_injection(config: RunConfig):
    """Injection variant from the [injection] section."""
    section = config.section('injection')
    mode = section['mode']
    if mode == 'none':
        return NoInjection()
    spec = SqueezeSpec.from_db(section['squeeze_db'], math.radians(section['theta_deg']), section['eta'])
    if mode == 'fixed':
        return FixedSqueeze(spec)
    if mode == 'optimal':
        return OptimalFrequencyDependent(r=spec.r, eta=spec.eta)
    detunings, bandwidths = section['detuning_hz'], section['half_bandwidth_hz']
    if not detunings or len(detunings) != len(bandwidths):
        raise ConfigError("filter_cavity injection needs detuning_hz and half_bandwidth_hz lists of equal length")
    cavities = tuple(FilterCavity(d, g) for d, g in zip(detunings, bandwidths))
    return FilterCavityInjection(spec=spec, filters=FilterCavitySpec(cavities))


def build_state(config: RunConfig) -> GaussianState:
    """Single-mode state from the [state] section: squeezing, loss, then displacement."""
    section = config.section('state')
    state = squeezed_vacuum(SqueezeSpec.from_db(section['squeeze_db'], math.radians(section['theta_deg'])))
    state = apply_loss(state, 0, section['eta_sq'])
    return displace(state, 0, section['dx'], section['dy'])


def cmd_noise_budget(config: RunConfig, seed: Optional[int] = None, progress: bool = False) -> CommandResult:
    """
    Quantum-noise budget on a frequency grid.

    Returns:
        CommandResult with columns f_hz, shot, rpn, sql, total, total_injected
    """
    ifo = build_interferometer(config)
    injection = build_injection(config)
    grid = config.section('grid')
    f_hz = frequency_grid(grid['f_min'], grid['f_max'], grid['points'], grid['log'])
    output = config.section('output')
    frame = noise_spectrum(ifo, f_hz, injection,
                           normalization=Normalization(output['normalization']),
                           susceptibility=Susceptibility(output['susceptibility']))

    result = CommandResult(frame=frame)
    omega_crossing = omega_sql(ifo)
    result.metadata.update({
        'omega_sql_rad_s': omega_crossing,
        'f_sql_hz': omega_crossing / (2 * math.pi),
        'units': 'm/sqrt(Hz)' if output['normalization'] == 'displacement' else '1/sqrt(Hz)',
    })
    discrepancy = total_noise_form_discrepancy(ifo, omega_crossing)
    if discrepancy > 1e-9:
        result.warnings.append(
            f"sum-of-squares and SQL-factored total noise differ by {discrepancy:.3e} (relative) at the SQL frequency")
    return result


def cmd_photon_stats(config: RunConfig, seed: Optional[int] = None, progress: bool = False) -> CommandResult:
    """
    Photon-number distributions, one probability column per panel.

    The default panels are squeezed vacua with r = 0.5, 1, 2, displaced
    squeezed states with alpha = 4, r = 1 at theta = 0 and pi/2, and a
    coherent state with alpha = 4.
    """
    section = config.section('photon')
    n_max = section['n_max']
    if section['panels'] == 'default':
        panels = DEFAULT_PHOTON_PANELS
    else:
        alpha = complex(section['alpha_re'], section['alpha_im'])
        panels = [('p', alpha, section['r'], math.radians(section['theta_deg']))]

    columns = {'n': np.arange(n_max + 1)}
    result = CommandResult(frame=pd.DataFrame())
    panel_info = {}
    for label, alpha, r, theta in tqdm(panels, desc='photon tables', disable=not progress):
        table = pmf_table(alpha, r, theta, n_max)
        columns[label] = table.probs
        panel_info[label] = {
            'alpha_re': alpha.real,
            'alpha_im': alpha.imag,
            'r': r,
            'theta_rad': theta,
            'mean_analytic': table.mean_analytic,
            'mean_numeric': table.mean_numeric,
            'mass': table.mass,
        }
        if table.truncated:
            result.warnings.append(
                f"panel {label}: n_max={n_max} holds only {table.mass:.9f} of the probability mass")
    result.frame = pd.DataFrame(columns)
    result.metadata['panels'] = panel_info
    return result


def cmd_wigner(config: RunConfig, seed: Optional[int] = None, progress: bool = False) -> CommandResult:
    """Wigner function of the configured state on a grid, in long format (x, y, w)."""
    state = build_state(config)
    section = config.section('wigner')
    grid = wigner_grid(state, 0, section['points'], section['span_sigma'])
    return CommandResult(frame=grid.to_frame(), metadata={'normalization': grid_normalization(grid)})


def _trace_or_spectrum(trace: HomodyneTrace, section: Dict[str, Any]) -> pd.DataFrame:
    if not section['spectrum']:
        return trace.to_frame()
    spectrum = spectrum_analyzer(trace, section['rbw_hz'])
    return pd.DataFrame({'f_hz': spectrum.f_hz, 'power': spectrum.values, 'power_db': spectrum.to_db()})


def cmd_homodyne_sim(config: RunConfig, seed: Optional[int] = None, progress: bool = False) -> CommandResult:
    """
    Homodyne time series: fixed-phase samples, a phase scan, or a Michelson
    signal in squeezed noise; optionally reduced to a spectrum.
    """
    section = config.section('homodyne')
    experiment = section['experiment']
    fs = section['sample_rate_hz']

    if experiment == 'scan':
        if section['spectrum']:
            raise ConfigError("a phase scan is reported as a rolling variance, not a spectrum")
        scan = scanned_phase_trace(
            build_state(config), 0,
            (math.radians(section['scan_start_deg']), math.radians(section['scan_stop_deg'])),
            section['n_samples'], section['window'], seed=seed, sample_rate_hz=fs)
        return CommandResult(frame=scan.to_frame(), metadata={
            'variance_db_min': float(scan.variance_db.min()),
            'variance_db_max': float(scan.variance_db.max()),
        })

    if experiment == 'michelson':
        trace = simulate_michelson_output(section['signal_amp'], section['signal_freq_hz'],
                                          config.get('state', 'squeeze_db'), section['duration_s'], fs, seed=seed)
        snr = matched_filter_snr(trace, section['signal_freq_hz'])
        return CommandResult(frame=_trace_or_spectrum(trace, section), metadata={'matched_filter_snr': snr})

    state = build_state(config)
    vartheta = math.radians(section['vartheta_deg'])
    trace = sample_quadratures(state, 0, vartheta, section['n_samples'], seed=seed, sample_rate_hz=fs)
    return CommandResult(frame=_trace_or_spectrum(trace, section), metadata={
        'sample_variance': float(np.var(trace.samples, ddof=1)),
        'analytic_variance': quadrature_variance(state, 0, vartheta),
    })


def cmd_qdm(config: RunConfig, seed: Optional[int] = None, progress: bool = False) -> CommandResult:
    """
    Dual-readout dense-metrology run: spectra of both readouts in dB
    relative to shot noise and the veto mask of the amplitude readout.
    """
    section = config.section('qdm')
    scenario = QdmScenario(
        squeeze_db_a=section['squeeze_db_a'],
        squeeze_db_b=section['squeeze_db_b'],
        efficiency=section['efficiency'],
        sample_rate_hz=section['sample_rate_hz'],
        n_samples=section['n_samples'],
    )
    disturbance = None
    if section['disturbance_amp'] != 0:
        disturbance = QdmDisturbance(section['disturbance_amp'], math.radians(section['disturbance_angle_deg']),
                                     section['disturbance_freq_hz'])
    readout = qdm_dual_readout(QdmSignal(section['signal_amp'], section['signal_freq_hz']),
                               disturbance, scenario, seed=seed)
    veto = qdm_veto(readout, section['threshold_sigma'], section['rbw_hz'])
    readout = readout.with_veto(veto.f_hz, veto.flagged)

    spectra = {}
    for name, samples in (('a', readout.trace_a), ('b', readout.trace_b)):
        trace = HomodyneTrace(samples=samples, sample_rate_hz=readout.sample_rate_hz, lo_phase=0.0,
                              source=f"QDM readout {name}", seed=seed)
        spectra[name] = spectrum_analyzer(trace, section['rbw_hz'])
    frame = pd.DataFrame({
        'f_hz': spectra['a'].f_hz,
        'readout_a_db': spectra['a'].to_db(),
        'readout_b_db': spectra['b'].to_db(),
        'veto': readout.veto_mask.astype(int),
    })
    return CommandResult(frame=frame, metadata={
        'floor_a': readout.floor_a,
        'floor_b': readout.floor_b,
        'floor_a_db': 10 * math.log10(readout.floor_a),
        'floor_b_db': 10 * math.log10(readout.floor_b),
        'vetoed_f_hz': veto.f_hz[veto.flagged].tolist(),
    })


def _entanglement_inputs(section: Dict[str, Any]):
    preset = section['preset']
    if preset == 'vacua':
        return vacuum_state(1), vacuum_state(1), 0.0
    if preset == 's_class':
        return (squeezed_vacuum(SqueezeSpec.from_db(section['squeeze_db'], 0.0)),
                squeezed_vacuum(SqueezeSpec.from_db(section['squeeze_db'], math.pi / 2)), 0.0)
    if preset == 'v_class':
        return squeezed_vacuum(SqueezeSpec.from_db(section['squeeze_db'], 0.0)), vacuum_state(1), 0.0
    return (squeezed_vacuum(SqueezeSpec.from_db(section['squeeze_db_a'], math.radians(section['theta_a_deg']))),
            squeezed_vacuum(SqueezeSpec.from_db(section['squeeze_db_b'], math.radians(section['theta_b_deg']))),
            math.radians(section['relative_phase_deg']))


def cmd_entanglement(config: RunConfig, seed: Optional[int] = None, progress: bool = False) -> CommandResult:
    """Duan and Reid criteria of a two-mode state built from two single-mode inputs."""
    section = config.section('entanglement')
    state_a, state_b, phase = _entanglement_inputs(section)
    state_a = apply_loss(state_a, 0, section['eta_sq'])
    state_b = apply_loss(state_b, 0, section['eta_sq'])
    report = criteria_report(assemble_bipartite(state_a, state_b, phase))
    frame = pd.DataFrame([{
        'duan': report['duan'],
        'duan_pass': int(report['duan_pass']),
        'reid': report['reid'],
        'reid_pass': int(report['reid_pass']),
    }])
    result = CommandResult(frame=frame, metadata={'criteria': report}, report=format_report(report))
    if not report['consistent']:
        result.warnings.append("Reid criterion passes while Duan fails")
    return result


COMMAND_HANDLERS: Dict[str, Callable[..., CommandResult]] = {
    'noise-budget': cmd_noise_budget,
    'photon-stats': cmd_photon_stats,
    'wigner': cmd_wigner,
    'homodyne-sim': cmd_homodyne_sim,
    'qdm': cmd_qdm,
    'entanglement': cmd_entanglement,
}


def run_command(config: RunConfig, seed: Optional[int] = None, progress: bool = False) -> CommandResult:
    """Dispatch a configuration to its subcommand."""
    if seed is None:
        seed = config.seed
    logger.debug("running %s (seed=%s)", config.command, seed)
    return COMMAND_HANDLERS[config.command](config, seed=seed, progress=progress)


def build_metadata(result: CommandResult, config: RunConfig, seed: Optional[int]) -> Dict[str, Any]:
    """JSON provenance block: version, timestamp, constants, config echo and warnings."""
    metadata = {
        'version': __version__,
        'generated_utc': utc_timestamp(),
        'command': config.command,
        'seed': seed,
        'constants': {'hbar': HBAR, 'c': C},
        'config': config.to_dict(),
        'warnings': list(result.warnings),
    }
    metadata.update(result.metadata)
    return metadata


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def write_result(result: CommandResult, config: RunConfig, seed: Optional[int],
                 out: Optional[str] = None, fmt: str = 'csv') -> None:
    """
    Write a result as CSV (nine significant digits, '\\n' line endings) or
    as JSON with a metadata block; to stdout when out is None.
    """
    if fmt == 'csv':
        target = out if out is not None else sys.stdout
        result.frame.to_csv(target, index=False, float_format='%.8e', lineterminator='\n')
        return
    document = {
        'metadata': build_metadata(result, config, seed),
        'data': result.frame.to_dict(orient='list'),
    }
    if out is None:
        json.dump(document, sys.stdout, indent=2, default=_json_default)
        sys.stdout.write('\n')
        return
    with open(out, 'w', encoding='utf-8') as handle:
        json.dump(document, handle, indent=2, default=_json_default)
        handle.write('\n')
