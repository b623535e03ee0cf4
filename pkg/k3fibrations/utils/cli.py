# -*- coding: utf-8 -*-
import argparse
from typing import Optional, Sequence


def _common() -> argparse.ArgumentParser:
    """Flags accepted by every subcommand."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--seed', type=int, default=0,
                        help='Seed for the random rational points.')
    parser.add_argument('--points', type=int, default=20,
                        help='Number of random points per check.')
    parser.add_argument('--budget', type=int, default=2_000_000,
                        help='Term limit for symbolic expansion.')
    parser.add_argument('--format', choices=('text', 'json'),
                        default='text', help='Output format.')
    parser.add_argument('-o', '--out', type=str, required=False,
                        help='File to save the output to (.csv, .txt, .md,\
                        .xlsx or .json).')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for debugging output.')
    return parser


def _point_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--J', type=str,
                       help='Invariants J2,J3,J4,J5,J6, e.g. 1,1,1,3,2.')
    group.add_argument('--params', type=str,
                       help='Sextuple alpha,...,zeta, e.g. 1,1,1,1,1,2.')
    group.add_argument('--param-file', type=str, dest='param_file',
                       help='JSON file with alpha..zeta or J2..J6 keys.')
    parser.add_argument('--a', type=str,
                        help='Root a of J5^2 - 4 J4 J6 (standard class).')


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Argument parser, allowing for command line arguments.
    This is the function used in pyproject.toml to run the CLI."""
    common = _common()
    parser = argparse.ArgumentParser(
        prog='k3fibrations',
        description='Exact Weierstrass models, fiber configurations and '
                    'heterotic data for the four Jacobian elliptic '
                    'fibrations on H+E7+E7 polarized K3 surfaces.',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''Example usage:
        k3fibrations build alternate --symbolic
        k3fibrations classify bfd --J 1,1,0,1,1
        k3fibrations verify j30 --seed 7 --points 50 --format json
        k3fibrations heterotic --J 1,1,0,0,1 --class bfd'''  # noqa
    )
    sub = parser.add_subparsers(dest='command', required=True)

    build = sub.add_parser('build', parents=[common],
                           help='Print a Weierstrass model.')
    build.add_argument('fibration', type=str,
                       help='standard, alternate, bfd or maximal.')
    _point_args(build)
    build.add_argument('--symbolic', action='store_true',
                       help='Keep the parameters symbolic.')
    build.add_argument('--raw', action='store_true',
                       help='Use the (alpha..zeta) model when symbolic.')
    build.add_argument('--branch', type=str, default='+',
                       help='Sign of a for the standard class (+ or -).')

    classify = sub.add_parser('classify', parents=[common],
                              help='Classify the singular fibers.')
    classify.add_argument('fibration', type=str)
    _point_args(classify)
    classify.add_argument('--branch', type=str, default='+')

    table = sub.add_parser('table', parents=[common],
                           help='Recompute the lattice polarization tables.')
    table.add_argument('--class', type=str, dest='fibration',
                       help='Limit to one fibration class.')

    verify = sub.add_parser('verify', parents=[common],
                            help='Run the identity checks.')
    verify.add_argument('suite', nargs='?', default=None,
                        help='Check name prefix, e.g. j30 or '
                             'substitution.standard.')

    inv = sub.add_parser('invariants', parents=[common],
                         help='Invariants, orbit label and loci of a point.')
    _point_args(inv)
    inv.add_argument('--compare', type=str,
                     help='A second sextuple to test for isomorphism.')

    het = sub.add_parser('heterotic', parents=[common],
                         help='Dual heterotic gauge algebras.')
    _point_args(het)
    het.add_argument('--class', type=str, dest='fibration',
                     help='Limit to one branch.')
    het.add_argument('--branch', type=str, default='+')
    het.add_argument('--bundle', action='store_true',
                     help='Also solve the bundle weight equations.')
    return parser.parse_args(argv)
