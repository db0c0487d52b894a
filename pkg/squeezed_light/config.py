"""
Run configuration module for the command-line interface.

A run configuration is a flat, sectioned key-value file:

    # comment
    [interferometer]
    power_w = 4000
    wavelength_m = 1550e-9

Each subcommand accepts a fixed set of sections and keys; anything else
is rejected. Omitted keys take the defaults listed in SCHEMAS. A JSON
artefact written by the CLI can be used in place of the INI file, in
which case its metadata.config block (and seed) are read back.
"""
import configparser
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from squeezed_light.exceptions import ConfigError

logger = logging.getLogger(__name__)


def _to_float(value) -> float:
    if isinstance(value, bool):
        raise ValueError("expected a number")
    return float(value)


def _to_int(value) -> int:
    if isinstance(value, bool):
        raise ValueError("expected an integer")
    number = float(value)
    if not number.is_integer():
        raise ValueError("expected an integer")
    return int(number)


def _to_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ('true', 'yes', 'on', '1'):
        return True
    if text in ('false', 'no', 'off', '0'):
        return False
    raise ValueError("expected true or false")


def _to_str(value) -> str:
    return str(value).strip().lower()


def _to_float_list(value) -> List[float]:
    if isinstance(value, (list, tuple)):
        return [_to_float(v) for v in value]
    return [float(part) for part in str(value).split(',') if part.strip()]


@dataclass(frozen=True)
class Option:
    """One configuration key: converter, default and allowed values."""
    convert: Callable[[Any], Any]
    default: Any = None
    choices: Optional[Tuple[str, ...]] = None


_INTERFEROMETER = {
    'power_w': Option(_to_float, 4000.0),
    'wavelength_m': Option(_to_float, 1550e-9),
    'arm_length_m': Option(_to_float, 600.0),
    'mirror_mass_kg': Option(_to_float, 0.1),
}

_STATE = {
    'squeeze_db': Option(_to_float, 10.0),
    'theta_deg': Option(_to_float, 0.0),
    'eta_sq': Option(_to_float, 1.0),
    'dx': Option(_to_float, 0.0),
    'dy': Option(_to_float, 0.0),
}

SCHEMAS: Dict[str, Dict[str, Dict[str, Option]]] = {
    'noise-budget': {
        'interferometer': _INTERFEROMETER,
        'arm_cavity': {'t_fp': Option(_to_float)},
        'pendulum': {'omega_m': Option(_to_float), 'q': Option(_to_float, 1e7)},
        'injection': {
            'mode': Option(_to_str, 'none', ('none', 'fixed', 'optimal', 'filter_cavity')),
            'squeeze_db': Option(_to_float, 10.0),
            'theta_deg': Option(_to_float, 45.0),
            'eta': Option(_to_float, 1.0),
            'detuning_hz': Option(_to_float_list, []),
            'half_bandwidth_hz': Option(_to_float_list, []),
        },
        'grid': {
            'f_min': Option(_to_float, 1.0),
            'f_max': Option(_to_float, 1e4),
            'points': Option(_to_int, 200),
            'log': Option(_to_bool, True),
        },
        'output': {
            'normalization': Option(_to_str, 'displacement', ('displacement', 'strain')),
            'susceptibility': Option(_to_str, 'free_mass', ('free_mass', 'pendulum')),
        },
    },
    'photon-stats': {
        'photon': {
            'panels': Option(_to_str, 'default', ('default', 'custom')),
            'n_max': Option(_to_int, 400),
            'alpha_re': Option(_to_float, 0.0),
            'alpha_im': Option(_to_float, 0.0),
            'r': Option(_to_float, 1.0),
            'theta_deg': Option(_to_float, 0.0),
        },
    },
    'wigner': {
        'state': _STATE,
        'wigner': {
            'points': Option(_to_int, 257),
            'span_sigma': Option(_to_float, 6.0),
        },
    },
    'homodyne-sim': {
        'state': _STATE,
        'homodyne': {
            'experiment': Option(_to_str, 'samples', ('samples', 'scan', 'michelson')),
            'vartheta_deg': Option(_to_float, 0.0),
            'n_samples': Option(_to_int, 100_000),
            'sample_rate_hz': Option(_to_float, 1e5),
            'window': Option(_to_int, 1000),
            'scan_start_deg': Option(_to_float, 0.0),
            'scan_stop_deg': Option(_to_float, 360.0),
            'signal_amp': Option(_to_float, 0.5),
            'signal_freq_hz': Option(_to_float, 1000.0),
            'duration_s': Option(_to_float, 1.0),
            'spectrum': Option(_to_bool, False),
            'rbw_hz': Option(_to_float, 100.0),
        },
    },
    'qdm': {
        'qdm': {
            'squeeze_db_a': Option(_to_float, 7.5),
            'squeeze_db_b': Option(_to_float, 7.5),
            'efficiency': Option(_to_float, 0.92),
            'sample_rate_hz': Option(_to_float, 1e5),
            'n_samples': Option(_to_int, 2 ** 17),
            'signal_amp': Option(_to_float, 0.5),
            'signal_freq_hz': Option(_to_float, 5000.0),
            'disturbance_amp': Option(_to_float, 1.0),
            'disturbance_angle_deg': Option(_to_float, 30.0),
            'disturbance_freq_hz': Option(_to_float, 12_000.0),
            'rbw_hz': Option(_to_float, 390.625),
            'threshold_sigma': Option(_to_float, 5.0),
        },
    },
    'entanglement': {
        'entanglement': {
            'preset': Option(_to_str, 's_class', ('s_class', 'v_class', 'vacua', 'custom')),
            'squeeze_db': Option(_to_float, 10.0),
            'eta_sq': Option(_to_float, 1.0),
            'squeeze_db_a': Option(_to_float, 10.0),
            'theta_a_deg': Option(_to_float, 0.0),
            'squeeze_db_b': Option(_to_float, 10.0),
            'theta_b_deg': Option(_to_float, 90.0),
            'relative_phase_deg': Option(_to_float, 0.0),
        },
    },
}

COMMANDS = tuple(SCHEMAS)


@dataclass(frozen=True)
class RunConfig:
    """
    Validated, typed configuration of one CLI run.

    values[section][key] holds every key of the command's schema, with
    defaults filled in, so the echo in JSON metadata is complete.
    """
    command: str
    values: Dict[str, Dict[str, Any]]
    source: Optional[str] = None
    seed: Optional[int] = None
    overridden: Tuple[Tuple[str, str], ...] = field(default=())

    def section(self, name: str) -> Dict[str, Any]:
        return dict(self.values[name])

    def get(self, section: str, key: str) -> Any:
        return self.values[section][key]

    def is_set(self, section: str, key: str) -> bool:
        """Whether the key was given explicitly rather than defaulted."""
        return (section, key) in self.overridden

    def to_dict(self) -> Dict[str, Dict[str, Any]]:
        """JSON-friendly copy of the values (lists copied)."""
        return {s: {k: list(v) if isinstance(v, list) else v for k, v in keys.items()}
                for s, keys in self.values.items()}


def _read_ini(path: str) -> Dict[str, Dict[str, str]]:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=('#', ';'))
    parser.optionxform = str
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            parser.read_file(handle)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}".replace('\n', ' ')) from exc
    if parser.defaults():
        raise ConfigError(f"{path}: [DEFAULT] section is not supported")
    return {s: {k: parser.get(s, k) for k in parser.options(s)} for s in parser.sections()}


def _read_json(path: str, command: str) -> Tuple[Dict[str, Dict[str, Any]], Optional[int]]:
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            document = json.load(handle)
    except ValueError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    metadata = document.get('metadata') if isinstance(document, dict) else None
    if not isinstance(metadata, dict) or not isinstance(metadata.get('config'), dict):
        raise ConfigError(f"{path}: JSON config must carry a metadata.config block")
    if metadata.get('command', command) != command:
        raise ConfigError(f"{path} was produced by '{metadata['command']}', not '{command}'")
    raw = metadata['config']
    if not all(isinstance(keys, dict) for keys in raw.values()):
        raise ConfigError(f"{path}: metadata.config sections must be key-value maps")
    return raw, metadata.get('seed')


def parse_run_config(command: str, raw: Dict[str, Dict[str, Any]], source: Optional[str] = None,
                     seed: Optional[int] = None) -> RunConfig:
    """
    Validate raw sectioned values against a command's schema.

    Args:
        command: Subcommand name
        raw: {section: {key: value}} with string or JSON-native values
        source: Where the values came from, for messages
        seed: Seed recorded alongside the configuration

    Returns:
        RunConfig with every schema key present

    Raises:
        ConfigError: for unknown sections or keys and unconvertible values
    """
    if command not in SCHEMAS:
        raise ConfigError(f"unknown command '{command}'")
    schema = SCHEMAS[command]
    origin = source or 'config'
    for section, keys in raw.items():
        if section not in schema:
            raise ConfigError(f"{origin}: unknown section [{section}] for {command}")
        for key in keys:
            if key not in schema[section]:
                raise ConfigError(f"{origin}: unknown key '{key}' in [{section}]")

    values: Dict[str, Dict[str, Any]] = {}
    overridden = []
    for section, options in schema.items():
        given = raw.get(section, {})
        values[section] = {}
        for key, option in options.items():
            if key not in given or given[key] is None:
                values[section][key] = option.default
                continue
            try:
                value = option.convert(given[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{origin}: [{section}] {key} = {given[key]!r}: {exc}") from exc
            if option.choices is not None and value not in option.choices:
                raise ConfigError(
                    f"{origin}: [{section}] {key} must be one of {', '.join(option.choices)}, got {value!r}")
            values[section][key] = value
            overridden.append((section, key))

    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ConfigError(f"{origin}: seed must be an integer, got {seed!r}")
    logger.debug("%s: %d keys set explicitly", origin, len(overridden))
    return RunConfig(command=command, values=values, source=source, seed=seed, overridden=tuple(overridden))


def load_run_config(command: str, path: Optional[str] = None) -> RunConfig:
    """
    Load the configuration of a subcommand from an INI or JSON file.

    Args:
        command: Subcommand name
        path: Config file; None runs with defaults

    Returns:
        Validated RunConfig
    """
    if path is None:
        return parse_run_config(command, {})
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    if path.lower().endswith('.json'):
        raw, seed = _read_json(path, command)
        return parse_run_config(command, raw, source=path, seed=seed)
    return parse_run_config(command, _read_ini(path), source=path)
