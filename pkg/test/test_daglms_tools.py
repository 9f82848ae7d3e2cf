# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains test functions related to daglms_tools.py and daglms_metadata.py

Created October 2026, the daglms developers
'''

# Import from python
import os
import pickle

import numpy as np
import pytest

# Import from daglms
from daglms import daglms_metadata as dlms_m
from daglms.daglms_tools import (ConfigError, DivergenceError, check_keys, resolve_params,
                                 get_nproc, load_yaml, write_csv, write_table_csv, write_yaml,
                                 aligned_table, pool_map)

def test_resolve_params():
    """ The scenario defaults fill the null values """

    params = resolve_params({'scenario': 'ale'})

    assert params['algorithm'] == {'rule': 'nlms', 'mu': 0.02, 'delta': 1e-16}
    assert params['filter_length'] == 100
    assert params['delay'] == 100
    assert params['monte_carlo_runs'] == 50
    assert params['ale']['noise_std'] == 0.003

    params = resolve_params({'scenario': 'ident_fir', 'filter_length': 12,
                             'ident': {'plant': {'delay': 2}}})
    assert params['filter_length'] == 12
    assert params['ident']['prbs_length'] == 8
    assert params['ident']['plant']['numerator'] == [1., 0.5]
    assert params['ident']['plant']['delay'] == 2

    # The defaults are left untouched
    assert dlms_m.default_params['ident']['plant']['delay'] == 1
    assert dlms_m.default_params['filter_length'] is None

def test_config_errors():
    """ Unknown keys and invalid values are configuration errors """

    for bad in [{'scenario': 'ale', 'filter_lenght': 3},
                {'scenario': 'ale', 'algorithm': {'step': 0.1}},
                {'scenario': 'nope'},
                {'scenario': 'ale', 'filter_length': 0},
                {'scenario': 'ale', 'monte_carlo_runs': 2.5},
                {'scenario': 'ale', 'delay': -1},
                {'scenario': 'ale', 'multiprocessing': 'yes'},
                {'scenario': 'ale', 'ale': [1, 2]}]:
        with pytest.raises(ConfigError):
            resolve_params(bad)

    with pytest.raises(ConfigError):
        check_keys({'a': {'b': 1, 'c': 2}}, {'a': {'b': 0}})

def test_get_nproc():
    """ Test the multiprocessing setting """

    assert get_nproc(False) == 1
    assert get_nproc(True) >= 1
    assert get_nproc(3) == 3
    with pytest.raises(ConfigError):
        get_nproc(0)

def test_pool_map():
    """ Results come back in order, serial or parallel """

    assert pool_map(abs, [-3, 2, -1]) == [3, 2, 1]
    assert pool_map(abs, [-3, 2, -1], nproc=2) == [3, 2, 1]

def _diverge(sample):
    raise DivergenceError('diverged', sample=sample, norm=1e9)

def test_divergence_error_transfer():
    """ The divergence details survive pickling and the worker pool """

    err = pickle.loads(pickle.dumps(DivergenceError('diverged', sample=5, norm=2e8)))
    assert (str(err), err.sample, err.norm) == ('diverged', 5, 2e8)

    with pytest.raises(DivergenceError) as info:
        pool_map(_diverge, [7, 8], nproc=2)
    assert info.value.sample in [7, 8]
    assert info.value.norm == 1e9

def test_out_dir(monkeypatch):
    """ Flag, then environment, then default """

    monkeypatch.delenv(dlms_m.out_env_var, raising=False)
    assert dlms_m.get_out_dir() == os.path.join('.', 'daglms_products')

    monkeypatch.setenv(dlms_m.out_env_var, '/some/where')
    assert dlms_m.get_out_dir() == '/some/where'
    assert dlms_m.get_out_dir('here') == 'here'

def test_yaml(tmp_path):
    """ Test the YAML reading and writing """

    fn = str(tmp_path / 'out.yaml')
    write_yaml(fn, {'b': 1, 'a': [0.1, None]})

    assert load_yaml(fn) == {'b': 1, 'a': [0.1, None]}
    with open(fn, 'r', encoding='utf-8') as f:
        assert f.readline().startswith('b:')

    bad = tmp_path / 'bad.yaml'
    bad.write_text('a: [1, 2\n')
    with pytest.raises(ConfigError):
        load_yaml(str(bad))
    with pytest.raises(ConfigError):
        load_yaml(str(tmp_path / 'missing.yaml'))

def test_csv_writers(tmp_path):
    """ Test the CSV formats """

    fn = write_csv(str(tmp_path / 'a.csv'), ['x', 'y'], [np.arange(2), [0.1, -np.inf]])
    with open(fn, 'rb') as f:
        assert f.read() == b'x,y\n0,0.10000000000000001\n1,-inf\n'

    fn = write_table_csv(str(tmp_path / 'b.csv'), ['label', 'val', 'n'],
                         [['a,b', 0.5, None], ['c', 1.25, 3]])
    with open(fn, 'rb') as f:
        assert f.read() == b'label,val,n\na;b,0.5,\nc,1.25,3\n'

    assert sorted(os.listdir(tmp_path)) == ['a.csv', 'b.csv']

def test_aligned_table():
    """ Test the text table """

    lines = aligned_table(['name', 'value'], [['gradient', 1.5], ['ip', None]]).split('\n')

    assert lines[0] == '    name  value'
    assert lines[1] == '--------  -----'
    assert lines[2] == 'gradient    1.5'
    assert lines[3] == '      ip      -'
