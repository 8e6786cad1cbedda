#!/usr/bin/env python3
"""omit — OMIT spin-readout figures, sweeps and feasibility reports. Run `omit --help`."""

import argparse
import logging
import sys

from cli import __version__
from cli.commands.fig2 import cmd_fig2
from cli.commands.fig3 import cmd_fig3
from cli.commands.figs1 import cmd_figs1
from cli.commands.figs2 import cmd_figs2
from cli.commands.figs5 import cmd_figs5
from cli.commands.oracle_check import cmd_oracle_check
from cli.commands.report import cmd_report
from cli.commands.snr_trace import cmd_snr_trace
from cli.commands.spectrum import cmd_spectrum

COMMANDS = [
    ('fig2',         cmd_fig2,         'Optimized measurement time across χ/Γ'),
    ('figS1',        cmd_figs1,        'Measurement time for several bath occupations'),
    ('figS2',        cmd_figs2,        'Measurement time with a cooperativity cap'),
    ('fig3',         cmd_fig3,         'Excess imprecision noise vs detection efficiency'),
    ('figS5',        cmd_figs5,        'SiV strain coupling g_sm along the B_z sweep'),
    ('report',       cmd_report,       'QND feasibility budget at the operating point'),
    ('snr-trace',    cmd_snr_trace,    'SNR(τ) and its ingredients'),
    ('spectrum',     cmd_spectrum,     'OMIT reflection spectrum for both spin states'),
    ('oracle-check', cmd_oracle_check, 'Check closed forms against the finite-κ oracles'),
]

# ── Shared display data ───────────────────────────────────────────────────────
# Single source of truth for command groups and examples.
# Both EPILOG (plain text) and _print_colored_help() render from these.

COMMAND_GROUPS = [
    ('readout',     ['fig2', 'figS1', 'figS2', 'snr-trace', 'spectrum']),
    ('sensing',     ['fig3']),
    ('spin model',  ['figS5']),
    ('budget',      ['report']),
    ('validation',  ['oracle-check']),
]

# (command_prefix, argument, description)
EXAMPLES = [
    ('omit fig2',         '',                                  'SiV defaults → fig2.csv, fig2.gp, fig2.meta'),
    ('omit fig2',         '--config siv.conf -o out/t.csv',    'custom device and output'),
    ('omit fig2',         '--set n_th=1 --jobs 4',             'finite temperature, 4 workers'),
    ('omit figS1',        '--n-th 0 --n-th 10',                'bath occupations to compare'),
    ('omit figS2',        '--c-max 10',                        'cap the cooperativity at 10'),
    ('omit figS5',        '--points 400',                      'finer B_z grid'),
    ('omit report',       '--set c_om=2',                      'budget at a fixed cooperativity'),
    ('omit snr-trace',    '--set c_om=auto',                   'SNR build-up at the optimum'),
    ('omit oracle-check', '--samples 20',                      'finite-κ cross-checks'),
    ('omit fig2',         '--config fig2.meta',                're-run from a sidecar'),
]


def _build_epilog():
    lines = [
        '',
        'config:',
        '  key = value lines, # comments; Hz on disk, rad/s inside',
        '  without --config the SiV device is used',
        '',
        'exit codes:',
        '  0  success',
        '  1  configuration error or unexpected failure',
        '  2  sweep finished with failed points (CSV still written)',
        '',
        'examples:',
    ]
    col = max(len(f'  {cmd} {arg}') for cmd, arg, _ in EXAMPLES) + 2
    for cmd, arg, desc in EXAMPLES:
        line = f'  {cmd} {arg}'
        lines.append(f'{line:<{col}}{desc}')
    return '\n'.join(lines) + '\n'


EPILOG = _build_epilog()


class _ColorHelpAction(argparse.Action):
    """Intercept -h / --help and fire the colored omit help instead."""

    def __init__(self, option_strings, dest=argparse.SUPPRESS,
                 default=argparse.SUPPRESS, help=None):
        super().__init__(
            option_strings=option_strings,
            dest=dest,
            default=default,
            nargs=0,
            help=help,
        )

    def __call__(self, parser, namespace, values, option_string=None):
        _print_colored_help()
        parser.exit()


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', '-c', default=None, metavar='PATH',
                        help='key = value config file (default: built-in SiV device)')
    common.add_argument('--out', '-o', default=None, metavar='PATH',
                        help='Output file; its directory must exist')
    common.add_argument('--set', action='append', default=[], metavar='KEY=VALUE',
                        help='Override a config key (repeatable, applied last)')
    common.add_argument('--points', '-n', type=int, default=None, metavar='N',
                        help='Grid size (command-specific default)')
    common.add_argument('--jobs', '-j', type=int, default=1, metavar='N',
                        help='Worker processes for sweeps')
    common.add_argument('--tolerance', type=float, default=None, metavar='X',
                        help='Relative tolerance for root finding / oracle quadrature')
    common.add_argument('--timing', action='store_true',
                        help='Print a timing table on stderr')
    common.add_argument('--verbose', '-v', action='count', default=0,
                        help='-v for info, -vv for debug logging')
    return common


def build_parser():
    parser = argparse.ArgumentParser(
        prog='omit',
        description='Dispersive spin readout through optomechanically induced transparency.',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
        add_help=False,          # we register our own -h / --help below
    )
    parser.add_argument('-h', '--help', action=_ColorHelpAction,
                        default=argparse.SUPPRESS,
                        help='Show this help message and exit')
    parser.add_argument('--version', '-V', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command')
    common = _common_options()
    for name, _, help_str in COMMANDS:
        sub.add_parser(name, help=help_str, parents=[common])
    _configure_subparsers(sub)
    return parser


def _configure_subparsers(sub):
    p_s1 = sub._name_parser_map['figS1']
    p_s1.add_argument('--n-th', dest='n_th', type=float, action='append', default=None,
                      metavar='N', help='Bath occupation (repeatable; default 0, 1, 10)')

    p_s2 = sub._name_parser_map['figS2']
    p_s2.add_argument('--c-max', dest='c_max', type=float, action='append', default=None,
                      metavar='C', help='Cooperativity cap (repeatable; default 10, 100, 1000)')

    p_3 = sub._name_parser_map['fig3']
    p_3.add_argument('--c-om-bae', dest='c_om_bae', type=float, default=None, metavar='C',
                     help='Cooperativity of the BAE reference (default: C → ∞)')

    p_oc = sub._name_parser_map['oracle-check']
    p_oc.add_argument('--samples', type=int, default=5, metavar='N',
                      help='Random SNR comparison points')
    p_oc.add_argument('--seed', type=int, default=7)


_HANDLERS = {name: handler for name, handler, _ in COMMANDS}


def _print_colored_help():
    from cli.format import bold, dim, cyan, green

    print(f'  {bold("omit")} {dim(__version__)}  — dispersive spin readout through OMIT.')
    print()
    print(f'  {dim("usage:")}  omit <command> [--config PATH] [--out PATH] [--set KEY=VALUE ...]')
    print()

    # ── Commands ──────────────────────────────────────────────────────────────
    print(f'  {dim("commands:")}')
    cmd_map = {name: help_str for name, _, help_str in COMMANDS}
    for group_label, names in COMMAND_GROUPS:
        print(f'    {dim(group_label)}')
        for name in names:
            print(f'      {cyan(f"omit {name:<13}")}  {cmd_map.get(name, "")}')
        print()

    # ── Outputs ───────────────────────────────────────────────────────────────
    print(f'  {dim("outputs:")}')
    print(f'    {green("<out>.csv")}   data, 12 significant digits')
    print(f'    {green("<out>.meta")}  resolved config; usable as --config')
    print(f'    {green("<out>.gp")}    gnuplot script')
    print()

    # ── Examples: same data as EPILOG ─────────────────────────────────────────
    print(f'  {dim("examples:")}')
    col = max(len(f'    {cmd} {arg}') for cmd, arg, _ in EXAMPLES) + 2
    for cmd, arg, desc in EXAMPLES:
        raw_len = len(f'    {cmd} {arg}')
        padding = ' ' * (col - raw_len)
        print(f'    {dim(cmd)} {arg}{padding}{dim(desc)}')
    print()

    print(f'  {dim("omit <command> --help for per-command options.")}')


def _setup_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def main(argv=None):
    parser = build_parser()
    try:
        import argcomplete
        argcomplete.autocomplete(parser)
    except ImportError:
        pass
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    if args.command is None:
        _print_colored_help()
        return
    args.argv = argv
    _setup_logging(args.verbose)
    if args.command in _HANDLERS:
        from cli.format import err
        from omit.errors import ConfigError, OmitError
        try:
            code = _HANDLERS[args.command](args)
        except KeyboardInterrupt:
            sys.exit(130)
        except SystemExit:
            raise
        except ConfigError as exc:
            err(str(exc))
            sys.exit(1)
        except OmitError as exc:
            err(f'{type(exc).__name__}: {exc}')
            sys.exit(1)
        except Exception as exc:
            print(f'\n  ✗ Unexpected error: {type(exc).__name__}: {exc}', file=sys.stderr)
            sys.exit(1)
        if code:
            sys.exit(code)
    else:
        parser.print_help()


if __name__ == '__main__':
    main()
