# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains the command line interface of daglms.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

import os
import sys
import shutil
import argparse

from . import daglms_metadata as dlms_m
from . import daglms_tools as dlms_t
from . import daglms as dlms
from .daglms_core import DagCoefficients
from .daglms_tools import ConfigError, DaglmsError, DivergenceError
from .daglms_version import __version__

# Use argparse to make daglms user friendly --------------------------------------------------------
parser = argparse.ArgumentParser(description=''' Variable step-size LMS adaptation with a dynamic
 adaptation gain (DAG): design tools, transient analysis and experiments. ''',
                                 epilog=' Exit codes: 0 success, 2 configuration error, ' +
                                 '3 divergence.',
                                 formatter_class=argparse.RawTextHelpFormatter)

parser.add_argument('-v', '--version', action='version', version=('%s' % (__version__)))

subparsers = parser.add_subparsers(dest='command', metavar='command')

# Options shared by several commands
out_parser = argparse.ArgumentParser(add_help=False)
out_parser.add_argument('--out-dir', action='store', default=None, metavar='DIR',
                        help='output directory (default: $%s, or ./%s).' %
                        (dlms_m.out_env_var, dlms_m.prod_loc))
out_parser.add_argument('--svg', action='store_true', help='also save SVG figures.')

dag_parser = argparse.ArgumentParser(add_help=False)
dag_parser.add_argument('coefficients', nargs='*', type=float, metavar='c1 c2 d1p',
                        help='the ARIMA2 DAG coefficients.')
dag_parser.add_argument('--coeff-file', action='store', default=None, metavar='FILE',
                        help='YAML file with "c" and "d_prime" lists, for any DAG order.')
dag_parser.add_argument('--preset', action='store', default=None,
                        choices=sorted(dlms_m.dag_presets), metavar='NAME',
                        help='a named DAG: %s.' % ', '.join(sorted(dlms_m.dag_presets)))

exp_parser = argparse.ArgumentParser(add_help=False)
exp_parser.add_argument('config', action='store',
                        help='the YAML configuration file (or a run manifest).')
exp_parser.add_argument('--seed', action='store', type=int, default=None,
                        help='overrides the rng_seed of the configuration.')
exp_parser.add_argument('--parallel', action='store', type=int, default=None, metavar='N',
                        help='number of parallel processes.')

subparsers.add_parser('setup', help='create a local copy of the configuration files.')

design_parser = subparsers.add_parser('design', parents=[dag_parser, out_parser],
                                      formatter_class=argparse.RawTextHelpFormatter,
                                      help='SPR/PR verdicts, steady-state gain and log-gain ' +
                                      'integral of a DAG.')
design_parser.add_argument('--grid-size', action='store', type=int, default=dlms_m.grid_size,
                           help='number of frequencies of the sweeps (default: %i).' %
                           dlms_m.grid_size)
design_parser.add_argument('--bode', action='store', default=None, metavar='FILE',
                           help='save the Bode diagram to a CSV file, relative to the ' +
                           'output directory.')
design_parser.add_argument('--contour', action='store', nargs=2, default=None,
                           metavar=('d1p=VALUE', 'FILE'),
                           help='save the SPR/PR boundaries in the c1-c2 plane, for a given ' +
                           "d'1, to a CSV file.")

transient_parser = subparsers.add_parser('transient', parents=[dag_parser, out_parser],
                                         formatter_class=argparse.RawTextHelpFormatter,
                                         help='linearized transient of the parameter error.')
transient_parser.add_argument('--gain', action='store', type=float, default=0.01,
                              help='the linearized gain g (default: 0.01).')
transient_parser.add_argument('--horizon', action='store', type=int,
                              default=dlms_m.transient_horizon,
                              help='number of samples (default: %i).' % dlms_m.transient_horizon)
transient_parser.add_argument('--band', action='store', type=float, default=dlms_m.settle_band,
                              help='settling band (default: %g).' % dlms_m.settle_band)
transient_parser.add_argument('--out', action='store', default=None, metavar='FILE',
                              help='trajectory CSV file (default: transient.csv in the ' +
                              'output directory).')

subparsers.add_parser('run', parents=[exp_parser, out_parser],
                      help='run the scenario of a configuration file.')
subparsers.add_parser('sweep', parents=[exp_parser, out_parser],
                      help='run and compare the configurations of a sweep file.')

# --------------------------------------------------------------------------------------------------
def dag_from_args(args):
    ''' Builds the DAG from the coefficients, the coefficient file or the preset name. '''

    sources = [bool(args.coefficients), args.coeff_file is not None, args.preset is not None]
    if sum(sources) > 1:
        raise ConfigError('Give the DAG coefficients, a coefficient file or a preset, not several.')

    if args.preset is not None:
        return DagCoefficients.preset(args.preset)

    if args.coeff_file is not None:
        content = dlms_t.load_yaml(args.coeff_file)
        dlms_t.check_keys(content, {'c': None, 'd_prime': None}, where=args.coeff_file)
        return DagCoefficients(content.get('c') or [], content.get('d_prime') or [])

    if args.coefficients:
        if len(args.coefficients) != 3:
            raise ConfigError('Expected 3 coefficients (c1 c2 d1p), got %i.' %
                              len(args.coefficients))
        return DagCoefficients.arima2(*args.coefficients)

    return DagCoefficients(label='gradient')

def _parse_contour(contour):
    ''' Splits the --contour arguments into (d'1, filename). '''

    (arg, fn) = contour
    if not arg.startswith('d1p='):
        raise ConfigError('--contour expects d1p=<value> FILE, not: %s' % arg)
    try:
        return (float(arg[4:]), fn)
    except ValueError as err:
        raise ConfigError('Invalid d1p value: %s' % arg[4:]) from err

# --------------------------------------------------------------------------------------------------
def cmd_setup(args):
    ''' Copies the example configuration files, and creates the output directory. '''

    print('')

    # Very well, let's copy the files at the current location
    for f in [dlms_m.dlms_params, dlms_m.dlms_sweep]:
        if not os.path.isfile(os.path.join('.', f)):
            print('   - creating the local copy of %s ...' % (f))
            shutil.copyfile(os.path.join(dlms_m.dlms_dir, 'exec_scripts', f), f)

    out_dir = dlms_m.get_out_dir()
    if not os.path.isdir(out_dir):
        print('   - creating the local directory "%s" ...' % (out_dir))
        os.makedirs(out_dir)

    print('')
    print('daglms setup complete.')

    return 0

def _out_path(fn, out_dir):
    ''' Places a relative output filename inside the output directory (created if needed). '''

    path = os.path.join(dlms_m.get_out_dir(out_dir), fn)
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)

    return path

def cmd_design(args):
    ''' Design report of a DAG. '''

    if args.grid_size < 2:
        raise ConfigError('--grid-size must be >= 2.')

    bode_fn = None if args.bode is None else _out_path(args.bode, args.out_dir)

    contour = None
    if args.contour is not None:
        (d1_prime, fn) = _parse_contour(args.contour)
        contour = (d1_prime, _out_path(fn, args.out_dir))

    dlms.design(dag_from_args(args), grid_size=args.grid_size, bode_fn=bode_fn,
                contour=contour, svg=args.svg)

    return 0

def cmd_transient(args):
    ''' Linearized transient of a DAG. '''

    out_fn = _out_path('transient.csv' if args.out is None else args.out, args.out_dir)

    dlms.transient(dag_from_args(args), args.gain, horizon=args.horizon, band=args.band,
                   out_fn=out_fn, svg=args.svg)

    return 0

def cmd_run(args):
    ''' Runs a scenario. '''

    dlms.run(args.config, seed=args.seed, out_dir=args.out_dir, nproc=args.parallel,
             svg=args.svg)

    return 0

def cmd_sweep(args):
    ''' Runs a sweep. '''

    dlms.sweep(args.config, seed=args.seed, out_dir=args.out_dir, nproc=args.parallel,
               svg=args.svg)

    return 0

def main(argv=None):
    ''' The main function, run when daglms is started with the high-level entry point.

    Args:
        argv (list, optional): the command line arguments. Defaults to sys.argv[1:].

    Returns:
        int: the exit code.
    '''

    # What did the user type in ?
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return 0

    try:
        return globals()['cmd_' + args.command](args)
    except DivergenceError as err:
        print('daglms: divergence: %s' % err, file=sys.stderr)
        return 3
    except DaglmsError as err:
        print('daglms: %s' % err, file=sys.stderr)
        return 2

# Start of the interactive part --------------------------------------------------------------------
if __name__ == "__main__":

    sys.exit(main())
