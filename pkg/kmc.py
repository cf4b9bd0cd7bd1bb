#!/usr/bin/env python3
"""
kato-milne: residues, transfers and the reciprocity law in the Kato-Milne
cohomology of rational function fields over F_2
License: AGPLv3
"""

import sys
import json
import argparse
from kato_milne import KatoMilne, KatoMilneError, format_report, run_command


def read_class_text(value):
    """Class text from the command line, or from stdin when missing or '-'"""
    if value is None or value == '-':
        text = sys.stdin.read().strip()
        if not text:
            raise KatoMilneError("No class text given on the command line or on stdin")
        return text
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        description='kato-milne: exact computations in Kato-Milne cohomology over F_2(t1, ..., tK)(x)')
    parser.add_argument('--config', default='config.yaml', help='Configuration file path')
    parser.add_argument('-v', action='count', default=0,
                        help='Verbosity. Can be used multiple times: -v, -vv...')
    parser.add_argument('--tower', type=int, help='Number K of ground variables t1..tK')
    parser.add_argument('--seed', type=int, help='Seed of every random choice')
    parser.add_argument('--bound', type=int, help='Coefficient degree bound of the factor searches')
    parser.add_argument('--max-candidates', type=int, help='Candidate budget of the factor searches')
    parser.add_argument('--teich-depth', type=int, help='Teichmuller lift depth N')
    parser.add_argument('--json', action='store_true', default=None, help='Print the JSON report')

    commands = parser.add_subparsers(dest='command', required=True)

    def with_place(sub, required=True):
        sub.add_argument('--place', required=required, help="Place: 'inf' or a monic polynomial in x")
        sub.add_argument('--index', help="Admissible variable i' of an inseparable place, e.g. t1")
        sub.add_argument('--assume', action='store_true',
                         help='Accept a polynomial whose irreducibility is undecided')

    for name, help_text in (('residue', 'Residue of a class at a place'),
                            ('normalform', 'Normal form at a place, with witnesses and audit')):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument('cls', nargs='?', metavar='CLASS', help='Class text, stdin if omitted')
        with_place(sub)

    sub = commands.add_parser('transfer', help='Transfer of the residue at a place to the ground field')
    sub.add_argument('cls', nargs='?', metavar='CLASS', help='Class text, stdin if omitted')
    with_place(sub)
    sub.add_argument('--all-indices', action='store_true',
                     help='Transfer once per admissible index of an inseparable place')
    sub.add_argument('--decide', action='store_true', help='Also decide whether the transfer is zero')

    sub = commands.add_parser('reciprocity', help='Sum of the transferred residues over all places')
    sub.add_argument('cls', nargs='?', metavar='CLASS', help='Class text, stdin if omitted')

    sub = commands.add_parser('iszero', help='Decide whether a class vanishes')
    sub.add_argument('cls', nargs='?', metavar='CLASS', help='Class text, stdin if omitted')

    sub = commands.add_parser('gamma', help='The sequence gamma_0..gamma_N of a finite place')
    with_place(sub)
    sub.add_argument('--count', type=int, default=10, help='Last index N')

    sub = commands.add_parser('classify', help='Decide whether a polynomial defines a place')
    sub.add_argument('--poly', required=True, help='Monic polynomial in x')
    sub.add_argument('--index', help="Admissible variable i' of an inseparable place, e.g. t1")

    sub = commands.add_parser('selftest', help='Run an acceptance suite')
    sub.add_argument('--suite', default='all', help='Suite name, or all')
    sub.add_argument('--count', type=int, help='Number of cases')

    return parser


def main():
    """Main entry point"""
    args = build_parser().parse_args()
    overrides = {
        'tower': args.tower,
        'seed': args.seed,
        'bound': args.bound,
        'max_candidates': args.max_candidates,
        'teich_depth': args.teich_depth,
        'json': args.json,
    }

    try:
        app = KatoMilne(args.v, args.config, overrides)
        session = app.session()
        command_args = {key: value for key, value in vars(args).items()
                        if key not in overrides and key not in ('config', 'v', 'command', 'cls')}
        if args.command in ('residue', 'normalform', 'transfer', 'reciprocity', 'iszero'):
            command_args['class'] = read_class_text(args.cls)
    except KatoMilneError as e:
        print(f"Error: {e}", file=sys.stderr)
        print("Hint: Check config.yaml against config.yaml.template.", file=sys.stderr)
        print("Hint: Run with --help for the accepted flags.", file=sys.stderr)
        return 1

    session.log(1, f"Verbosity level: {session.verbosity}")
    result = run_command(session, args.command, command_args)
    if session.json:
        print(json.dumps(result.report, indent=2, sort_keys=False))
    else:
        print(format_report(result.report))
    if 'error' in result.report:
        print(f"Error: {result.report['error']}", file=sys.stderr)
        if 'position' in result.report:
            print("Hint: The position counts characters from 0.", file=sys.stderr)
    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
