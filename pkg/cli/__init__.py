"""
Command-line front end.

Every subcommand runs one pipeline and prints its table as CSV (header row,
floats to the configured number of significant digits) to stdout or --out.
Diagnostics go to stderr through the logging tree. The process exit code is
the pipeline's: 0 success, 1 domain or configuration error, 2 identity
failure, 3 numeric non-convergence, 4 size or range error.

Usage:
    smoothphi rho --u 2
    smoothphi count --x 1000000 --y 1000 --k 2
    smoothphi compare --x 100000 1000000 --u 2 --k 1 --jobs 4 --out sweep.csv
    python -m smoothphi.cli identities
"""

import argparse
import sys
from typing import List, Optional

from ..core.exceptions import SmoothPhiError
from ..utils.logging import get_logger, setup_logging

logger = get_logger('cli')


def _integer(text: str) -> int:
    """Integer argument; accepts exact float spellings such as 1e6."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per pipeline."""
    parser = argparse.ArgumentParser(
        prog='smoothphi',
        description='Smooth values of iterated Euler phi: counts, densities, asymptotics'
    )
    parser.add_argument('--out', help='Write CSV here instead of stdout')
    parser.add_argument('--config', help='YAML config file (default: $SMOOTHPHI_CONFIG or ~/.smoothphi/config.yaml)')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='Override the configured log level')

    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('rho', help="Dickman's rho grid on [0, u]")
    p.add_argument('--u', type=float, required=True)
    p.add_argument('--step', type=float)

    p = sub.add_parser('sigma', help='sigma_k grid, or sigma for a chi grid file')
    p.add_argument('--k', type=int, default=0)
    p.add_argument('--umax', type=float)
    p.add_argument('--step', type=float)
    p.add_argument('--chi', dest='chi_path', help='chi grid CSV (u,value)')
    p.add_argument('--compact', action='store_true', help='chi is zero beyond its grid')
    p.add_argument('--jump', type=float, metavar='T',
                   help='chi file samples a jump at grid point T by its mean value')

    p = sub.add_parser('xi', help='Saddle points xi(u)')
    p.add_argument('--u', type=float, nargs='+', required=True)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument('--chi', dest='chi_path', help='chi grid CSV (u,value)')
    source.add_argument('--indicator', type=float, metavar='T', help='chi = indicator of [0, T]')
    p.add_argument('--step', type=float)
    p.add_argument('--compact', action='store_true', help='chi is zero beyond its grid')

    for name, text in (('count', 'Phi_j(x, y) for j = 0..k'), ('pset', 'Members of P_k')):
        p = sub.add_parser(name, help=text)
        p.add_argument('--x', type=_integer, required=True)
        p.add_argument('--y', type=_integer, required=True)
        p.add_argument('--k', type=int, default=0)

    p = sub.add_parser('compare', help='Empirical against predicted densities')
    p.add_argument('--x', type=_integer, nargs='+', required=True, dest='x_list')
    p.add_argument('--u', type=float, help='y = round(x^(1/u))')
    p.add_argument('--y', type=_integer, help='Fixed y, overrides --u')
    p.add_argument('--k', type=int)
    p.add_argument('--step', type=float)
    p.add_argument('--umax', type=float)
    p.add_argument('--jobs', type=int, dest='parallelism')

    p = sub.add_parser('conjecture1', help='Shifted-prime against integer smooth ratios')
    p.add_argument('--x', type=_integer, required=True)
    p.add_argument('--y', type=_integer, required=True)
    p.add_argument('--pset', dest='pset_path', help='Prime-set CSV (header p)')

    p = sub.add_parser('eh', help='Averaged discrepancy of primes 1 mod d')
    p.add_argument('--x', type=_integer, required=True)
    p.add_argument('--epsilon', type=float, required=True)

    sub.add_parser('identities', help='Run the identity suites')

    return parser


def _dispatch(toolkit, args: argparse.Namespace):
    """Run the pipeline selected by args.command."""
    from ..pipelines import ExperimentConfig

    pipelines = toolkit.pipelines
    command = args.command

    if command == 'rho':
        return pipelines.rho(u=args.u, step=args.step)
    if command == 'sigma':
        return pipelines.sigma(k=args.k, umax=args.umax, step=args.step,
                               chi_path=args.chi_path, compact=args.compact, jump=args.jump)
    if command == 'xi':
        return pipelines.xi(u=args.u, chi_path=args.chi_path, indicator=args.indicator,
                            step=args.step, compact=args.compact)
    if command == 'count':
        return pipelines.count(x=args.x, y=args.y, k=args.k)
    if command == 'pset':
        return pipelines.pset(x=args.x, y=args.y, k=args.k)
    if command == 'compare':
        harness = toolkit.config.harness
        experiment = ExperimentConfig(
            x_list=args.x_list,
            u=args.u if args.u is not None else harness.default_u,
            k=args.k if args.k is not None else harness.default_k,
            step=args.step,
            umax=args.umax,
            out=args.out,
            parallelism=args.parallelism or harness.parallelism,
            y=args.y,
        )
        return pipelines.compare(experiment)
    if command == 'conjecture1':
        return pipelines.conjecture1(x=args.x, y=args.y, pset_path=args.pset_path)
    if command == 'eh':
        return pipelines.eh(x=args.x, epsilon=args.epsilon)
    return pipelines.identities()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, 'w', newline='') as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def main(argv: List[str] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:]).

    Returns:
        Process exit code.
    """
    from .. import SmoothPhiToolkit

    args = build_parser().parse_args(argv)

    try:
        toolkit = SmoothPhiToolkit(args.config)
    except SmoothPhiError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code

    if args.log_level:
        toolkit.config.logging.level = args.log_level
        setup_logging(toolkit.config.logging, force=True)

    result = _dispatch(toolkit, args)

    text = result.to_csv(toolkit.config.harness.float_digits)
    if text and not result.metadata.get('written'):
        try:
            _emit(text, args.out)
        except OSError as e:
            logger.error(f"Cannot write {args.out}: {e}")
            return 1

    if result.success:
        logger.info(f"{args.command}: {result.message} ({result.duration:.2f}s)")
    else:
        print(f"error: {result.error}", file=sys.stderr)

    return result.exit_code
