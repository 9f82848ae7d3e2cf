# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains general tools for the daglms routines: errors, configuration handling,
multiprocessing helpers and file writers.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

import os
import sys
import copy
import signal
import multiprocessing

import numpy as np
import yaml

from . import daglms_metadata as dlms_m

# --------------------------------------------------------------------------------------------------
class DaglmsError(Exception):
    ''' Base class for all the daglms errors. '''

class ConfigError(DaglmsError):
    ''' Malformed configuration, coefficients or arguments. '''

class IngestionError(DaglmsError):
    ''' Problem reading an external sample file. '''

class DomainError(DaglmsError):
    ''' Mathematical precondition violated. '''

class NumericError(DaglmsError):
    ''' Singular linear system or similar numerical breakdown. '''

class DivergenceError(DaglmsError):
    ''' The adaptive filter weights blew up.

    Args:
        msg (str): the diagnostic message.
        sample (int, optional): the sample index at which the divergence was detected.
        norm (float, optional): the weight norm at that sample.
    '''

    def __init__(self, msg, sample=None, norm=None):
        super().__init__(msg)
        self.sample = sample
        self.norm = norm

    def __reduce__(self):
        # Keep sample and norm when raised inside a pool worker
        return (self.__class__, (str(self), self.sample, self.norm))

# --------------------------------------------------------------------------------------------------
def init_worker():
    ''' Handles KeyboardInterrupt during multiprocessing.

    .. note:: See https://noswap.com/blog/python-multiprocessing-keyboardinterrupt

    '''
    signal.signal(signal.SIGINT, signal.SIG_IGN)

# --------------------------------------------------------------------------------------------------
def get_nproc(setting):
    ''' Converts the 'multiprocessing' parameter into a number of processes.

    Args:
        setting (bool|int): False for serial, True for all the cpus, or an upper limit.

    Returns:
        int: the number of processes to use (1 = serial).
    '''

    # bool is a subclass of int, so check it first
    if isinstance(setting, bool) or setting is None:
        return multiprocessing.cpu_count() if setting else 1

    if isinstance(setting, int) and setting >= 1:
        return setting

    raise ConfigError('multiprocessing must be True, False or a positive int, not: %s' % setting)

# --------------------------------------------------------------------------------------------------
def pool_map(func, items, nproc=1, label='job'):
    ''' Maps a function over some items, with a pool of workers if nproc > 1.

    Args:
        func (callable): single-argument function (use functools.partial to bind the rest).
        items (list): the items to process.
        nproc (int, optional): number of processes. Defaults to 1.
        label (str, optional): what is being processed, for the interruption message.

    Returns:
        list: the results, in the order of the items.
    '''

    if nproc <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    pool = multiprocessing.Pool(processes=min(nproc, len(items)), initializer=init_worker)

    try:
        out = pool.map(func, items)
    except KeyboardInterrupt:
        print(' interrupted !')
        # Still close and join properly
        pool.close()
        pool.join()
        sys.exit('Multiprocessing %s interrupted.' % label)
    else: # If all is fine
        pool.close()
        pool.join()

    return out

# --------------------------------------------------------------------------------------------------
def check_keys(params, defaults, where='config'):
    ''' Recursively ensures that all the keys of params exist in the defaults.

    Args:
        params (dict): the user parameters.
        defaults (dict): the reference parameters.
        where (str, optional): name of the section, for the error message.

    Raises:
        ConfigError: if an unknown key is found.
    '''

    if not isinstance(params, dict):
        raise ConfigError('Section "%s" must be a mapping, not: %s' % (where, params))

    for (key, val) in params.items():
        if key not in defaults:
            raise ConfigError('Unknown key "%s" in %s.' % (key, where))

        if isinstance(defaults[key], dict) and val is not None:
            check_keys(val, defaults[key], where='%s.%s' % (where, key))

# --------------------------------------------------------------------------------------------------
def merge_params(params, defaults):
    ''' Returns a deep copy of the defaults, updated with the user parameters.

    Args:
        params (dict): the user parameters (already checked).
        defaults (dict): the reference parameters.

    Returns:
        dict: the merged parameters.
    '''

    out = copy.deepcopy(defaults)

    for (key, val) in params.items():
        if isinstance(out.get(key), dict) and isinstance(val, dict):
            out[key] = merge_params(val, out[key])
        elif isinstance(out.get(key), dict) and val is None:
            continue
        else:
            out[key] = copy.deepcopy(val)

    return out

# --------------------------------------------------------------------------------------------------
def fill_nulls(params, fillers):
    ''' Replaces the None values of params by those of fillers, recursively and in place. '''

    for (key, val) in fillers.items():
        if isinstance(val, dict):
            fill_nulls(params[key], val)
        elif params.get(key) is None:
            params[key] = val

    return params

# --------------------------------------------------------------------------------------------------
def resolve_params(params):
    ''' Checks a user configuration and completes it with the defaults.

    Args:
        params (dict): the raw user configuration.

    Returns:
        dict: the full, resolved configuration.

    Raises:
        ConfigError: for unknown keys, unknown scenarios or invalid values.
    '''

    if params is None:
        params = {}

    check_keys(params, dlms_m.default_params)
    out = merge_params(params, dlms_m.default_params)

    if out['scenario'] not in dlms_m.scenarios:
        raise ConfigError('Unknown scenario "%s". Valid: %s' % (out['scenario'],
                                                                ', '.join(dlms_m.scenarios)))

    fill_nulls(out, dlms_m.scenario_defaults[out['scenario']])

    for key in ['filter_length', 'monte_carlo_runs', 'horizon']:
        if not isinstance(out[key], int) or out[key] < 1:
            raise ConfigError('%s must be an int >= 1, not: %s' % (key, out[key]))

    if not isinstance(out['delay'], int) or out['delay'] < 0:
        raise ConfigError('delay must be an int >= 0, not: %s' % (out['delay']))

    if not isinstance(out['rng_seed'], int) or out['rng_seed'] < 0:
        raise ConfigError('rng_seed must be an int >= 0, not: %s' % (out['rng_seed']))

    # Fails early on bad values
    get_nproc(out['multiprocessing'])

    return out

# --------------------------------------------------------------------------------------------------
def load_yaml(fn):
    ''' Loads a YAML file.

    Args:
        fn (str): the filename.

    Returns:
        object: the content of the file.

    Raises:
        ConfigError: if the file does not exist or is not valid YAML.
    '''

    if not os.path.isfile(fn):
        raise ConfigError('Failed to load the file %s.' % (fn))

    try:
        with open(fn, 'r', encoding='utf-8') as f:
            return yaml.load(f, Loader=yaml.SafeLoader)
    except yaml.YAMLError as err:
        raise ConfigError('Invalid YAML in %s: %s' % (fn, err)) from err

# --------------------------------------------------------------------------------------------------
def _replace(tmp_fn, fn):
    ''' Moves a freshly written temporary file onto its final name. '''

    try:
        os.replace(tmp_fn, fn)
    finally:
        if os.path.isfile(tmp_fn):
            os.remove(tmp_fn)

def write_csv(fn, cols, data):
    ''' Writes columns of numbers to a CSV file, atomically (write-temp-then-rename).

    Args:
        fn (str): the destination filename.
        cols (list of str): the column names.
        data (list of ndarray): the columns, all of the same length.

    Returns:
        str: the filename.

    .. note:: Numbers are written with 17 significant digits, comma-separated, with LF line
              endings and a single header row.
    '''

    arr = np.column_stack([np.asarray(col, dtype=float) for col in data])

    tmp_fn = '%s.%i.tmp' % (fn, os.getpid())
    np.savetxt(tmp_fn, arr, fmt=dlms_m.csv_fmt, delimiter=',', newline='\n',
               header=','.join(cols), comments='', encoding='utf-8')
    _replace(tmp_fn, fn)

    return fn

def write_table_csv(fn, cols, rows):
    ''' Writes rows of mixed content (labels and numbers) to a CSV file, atomically.

    Args:
        fn (str): the destination filename.
        cols (list of str): the column names.
        rows (list of list): the rows. Floats get 17 significant digits, None an empty cell.

    Returns:
        str: the filename.
    '''

    def fmt(val):
        if val is None:
            return ''
        if isinstance(val, (float, np.floating)):
            return dlms_m.csv_fmt % val
        return str(val).replace(',', ';')

    lines = [','.join(cols)] + [','.join(fmt(val) for val in row) for row in rows]

    return write_text(fn, '\n'.join(lines) + '\n')

def write_text(fn, text):
    ''' Writes some text to a file, atomically.

    Args:
        fn (str): the destination filename.
        text (str): the content.

    Returns:
        str: the filename.
    '''

    tmp_fn = '%s.%i.tmp' % (fn, os.getpid())
    with open(tmp_fn, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
    _replace(tmp_fn, fn)

    return fn

def write_yaml(fn, content):
    ''' Dumps a dictionary to a YAML file, atomically. '''

    return write_text(fn, yaml.safe_dump(content, default_flow_style=False, sort_keys=False))

# --------------------------------------------------------------------------------------------------
def aligned_table(cols, rows):
    ''' Formats a list of rows as an aligned text table.

    Args:
        cols (list of str): the column names.
        rows (list of list): the table content.

    Returns:
        str: the table, one line per row, with a header line.
    '''

    def fmt(val):
        if isinstance(val, float):
            return '%.6g' % val
        if val is None:
            return '-'
        return str(val)

    cells = [list(cols)] + [[fmt(val) for val in row] for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(cols))]

    lines = ['  '.join(cell.rjust(widths[i]) for (i, cell) in enumerate(line)) for line in cells]
    lines.insert(1, '  '.join('-' * w for w in widths))

    return '\n'.join(lines) + '\n'
