#!/usr/bin/env python3
"""
Command-line interface for the Squeezed Light package.

This script runs the squeezed_light simulations from a configuration file
and writes CSV or JSON artefacts for plotting and regression tests.

Exit codes: 0 success, 2 configuration or usage error, 3 numeric-domain
error. Failures print one line to stderr:
    error: kind=<config|domain> message="..."
"""
import argparse
import logging
import sys

from squeezed_light import __version__
from squeezed_light.commands import run_command, write_result
from squeezed_light.config import COMMANDS, load_run_config
from squeezed_light.exceptions import ConfigError, DomainError, InvalidArgumentError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

DESCRIPTIONS = {
    'noise-budget': 'Interferometer quantum-noise spectra with optional squeezed injection',
    'photon-stats': 'Photon-number distributions of displaced squeezed states',
    'wigner': 'Wigner function of a single-mode Gaussian state on a grid',
    'homodyne-sim': 'Simulated homodyne traces, phase scans and spectra',
    'qdm': 'Entangled dual-quadrature readout with disturbance veto',
    'entanglement': 'Duan and Reid criteria for a two-mode Gaussian state',
}


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as ConfigError instead of exiting."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one subcommand per simulation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='INI configuration file, or a JSON artefact to re-run')
    common.add_argument('--out', help='Output file path (default: stdout)')
    common.add_argument('--format', choices=['csv', 'json'], default='csv', help='Output format')
    common.add_argument('--seed', type=int, help='PRNG seed for stochastic simulations')
    common.add_argument('--debug', action='store_true', help='Enable debug logging and progress bars')

    parser = _ArgumentParser(prog='squeezed-light', description='Squeezed-light simulations')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common], help=DESCRIPTIONS[command],
                              description=DESCRIPTIONS[command])
    return parser


def _fail(kind: str, exc: Exception) -> None:
    message = str(exc).replace('\\', '\\\\').replace('"', '\\"').replace('\n', ' ')
    print(f'error: kind={kind} message="{message}"', file=sys.stderr)


def main(argv=None) -> int:
    """Process command line arguments and run the requested simulation."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ConfigError as exc:
        _fail('config', exc)
        return EXIT_CONFIG

    logging.basicConfig(level=logging.DEBUG if args.debug else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        config = load_run_config(args.command, args.config)
        seed = args.seed if args.seed is not None else config.seed
        result = run_command(config, seed=seed, progress=args.debug)
        # a bare report run prints the verdict instead of the table
        if result.report is None or args.out is not None:
            write_result(result, config, seed, args.out, args.format)
    except (ConfigError, InvalidArgumentError) as exc:
        _fail('config', exc)
        return EXIT_CONFIG
    except DomainError as exc:
        _fail('domain', exc)
        return EXIT_DOMAIN
    except OSError as exc:
        _fail('config', exc)
        return EXIT_CONFIG

    if result.report:
        print(result.report)
    if args.out:
        print(f"Wrote {len(result.frame)} rows to {args.out}")
    for warning in result.warnings:
        logging.getLogger('squeezed_light').warning(warning)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
