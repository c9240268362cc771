import argparse
import sys

from .data import help_text
from .errors import ConfigError, NumericalError, SymbolError
from .harness import EXPERIMENTS, parse_config, resolve_cache_dir, run_experiment
from .utils import log_message, set_log_level

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog='qmap',
        description='Spectra of damped quantum maps on the 2-torus.',
        epilog=help_text,
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument('experiment', help=f"one of: {', '.join(EXPERIMENTS)}")
    parser.add_argument('-c', '--config', required=True,
                        help="JSON experiment config ('-' reads stdin)")
    parser.add_argument('-o', '--out', help='output directory (overrides output_dir)')
    parser.add_argument('--cache', help='cache directory (overrides QMAP_CACHE and cache_dir)')
    parser.add_argument('-t', '--threads', type=int, help='worker threads over the N grid')
    parser.add_argument('--seed', type=int, help='PRNG seed (overrides seed)')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='also print DEBUG lines')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='only warnings and errors')
    return parser


def load_config(args):
    """Config file, checked against the experiment named on the command line, with CLI overrides"""
    cfg = parse_config(args.config)
    if args.experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment '{args.experiment}'", 'experiment')
    if args.experiment != cfg.experiment:
        raise ConfigError(f"command line asks for '{args.experiment}' but the config "
                          f"describes '{cfg.experiment}'", 'experiment')
    if args.seed is not None and args.seed < 0:
        raise ConfigError('must be >= 0', 'seed')
    return cfg.with_overrides(output_dir=args.out, seed=args.seed, threads=args.threads)


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_log_level('DEBUG')
    elif args.quiet:
        set_log_level('WARNING')

    try:
        cfg = load_config(args)
        report = run_experiment(cfg, resolve_cache_dir(cfg, args.cache))
    except (ConfigError, SymbolError) as e:
        log_message(f"Configuration error: {e}", 'ERROR')
        return EXIT_CONFIG
    except NumericalError as e:
        log_message(f"Numerical failure: {e}", 'ERROR')
        return EXIT_NUMERICAL

    if not report.ok:
        log_message(f"{len(report.failed)} grid point(s) failed: {report.failed}", 'ERROR')
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
