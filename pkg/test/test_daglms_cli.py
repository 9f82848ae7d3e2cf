# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains test functions related to the daglms entry points (__main__.py and daglms.py)

Created October 2026, the daglms developers
'''

# Import from python
import os

import numpy as np
import pytest
import yaml

# Import from daglms
from daglms import daglms_metadata as dlms_m
from daglms import daglms as dlms
from daglms.__main__ import main
from daglms.daglms_core import DagCoefficients

def _write_config(path, **kwargs):
    """ Writes a quiet identification configuration """

    config = {'scenario': 'ident_iir', 'verbose': False}
    config.update(kwargs)
    path.write_text(yaml.safe_dump(config))

    return str(path)

def test_design(capsys, tmp_path):
    """ Test the design report """

    assert main(['design', '0.99', '0', '0.9']) == 0
    out = capsys.readouterr().out
    assert 'H_DAG SPR: Y' in out
    assert 'H_PAA PR: N' in out
    assert 'Steady-state gain: 19.9' in out

    assert main(['design', '--preset', 'ip']) == 0
    assert 'H_PAA PR: Y' in capsys.readouterr().out

    # Wrong number of coefficients, or several sources
    assert main(['design', '1', '2']) == 2
    assert main(['design', '0', '0', '0', '--preset', 'ip']) == 2
    assert 'daglms:' in capsys.readouterr().err

def test_design_files(capsys, tmp_path):
    """ Test the Bode and contour files """

    bode_fn = str(tmp_path / 'bode.csv')
    contour_fn = str(tmp_path / 'contour.csv')

    assert main(['design', '--preset', 'arima2', '--grid-size', '128', '--bode', bode_fn,
                 '--contour', 'd1p=0.5', contour_fn, '--svg']) == 0

    with open(bode_fn, 'r', encoding='utf-8') as f:
        lines = f.read().split('\n')
    assert lines[0] == 'omega_rad,mag_db,phase_deg,real_part'
    assert len(lines) == 130

    with open(contour_fn, 'r', encoding='utf-8') as f:
        assert f.readline() == 'c1,c2,boundary_id\n'

    assert os.path.isfile(str(tmp_path / 'bode.svg'))
    assert os.path.isfile(str(tmp_path / 'contour.svg'))

    with open(str(tmp_path / 'bode_manifest.yaml'), 'r', encoding='utf-8') as f:
        manifest = yaml.safe_load(f)
    assert manifest['config']['grid_size'] == 128
    assert manifest['config']['contour']['d1_prime'] == 0.5
    assert manifest['config']['dag'] == {'c': [0.99], 'd_prime': [0.9]}
    assert [os.path.basename(fn) for fn in manifest['outputs']] == ['bode.csv', 'bode.svg',
                                                                   'contour.csv', 'contour.svg']

    assert main(['design', '--contour', 'd=0.5', contour_fn]) == 2
    assert main(['design', '--contour', 'd1p=abc', contour_fn]) == 2

def test_coeff_file(capsys, tmp_path):
    """ Higher order DAGs come from a coefficient file """

    fn = tmp_path / 'dag.yaml'
    fn.write_text('c: [0.5, 0.2, 0.1]\nd_prime: [0.3]\n')
    assert main(['design', '--coeff-file', str(fn)]) == 0
    assert 'H_DAG SPR:' in capsys.readouterr().out

    fn.write_text('c: [0.5]\nd: [0.3]\n')
    assert main(['design', '--coeff-file', str(fn)]) == 2

def test_transient(capsys, tmp_path):
    """ Test the transient trajectory """

    out_fn = str(tmp_path / 'wt.csv')
    assert main(['transient', '0.99', '0', '0.75', '--gain', '0.01', '--out', out_fn]) == 0
    assert 'settling time' in capsys.readouterr().out

    with open(out_fn, 'r', encoding='utf-8') as f:
        lines = f.read().split('\n')
    assert lines[0] == 't,wtilde,predicted_wtilde'
    assert lines[1] == '0,1,1'
    assert len(lines) == 2002 and lines[-1] == ''

    # The averaged feedback model and the linearized prediction agree on a scalar error
    data = np.loadtxt(out_fn, delimiter=',', skiprows=1)
    np.testing.assert_allclose(data[:, 1], data[:, 2], rtol=1e-9, atol=1e-12)

    assert main(['transient', '--gain', '0.05', '--horizon', '100', '--out-dir',
                 str(tmp_path / 'products'), '--svg']) == 0
    for fn in ['transient.csv', 'transient.svg', 'transient_manifest.yaml']:
        assert os.path.isfile(str(tmp_path / 'products' / fn))

    with open(str(tmp_path / 'products' / 'transient_manifest.yaml'), 'r',
              encoding='utf-8') as f:
        manifest = yaml.safe_load(f)
    assert manifest['config']['g'] == 0.05
    assert manifest['config']['horizon'] == 100

def test_relative_outputs(capsys, tmp_path, monkeypatch):
    """ Relative output names land in the output directory """

    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv(dlms_m.out_env_var, 'from_env')

    assert main(['design', '--preset', 'ip', '--grid-size', '64', '--bode', 'bode.csv',
                 '--contour', 'd1p=0.5', 'contour.csv']) == 0
    for fn in ['bode.csv', 'contour.csv', 'bode_manifest.yaml']:
        assert os.path.isfile(str(tmp_path / 'from_env' / fn))
    assert not os.path.exists(str(tmp_path / 'bode.csv'))

    assert main(['design', '--preset', 'ip', '--grid-size', '64', '--bode', 'bode.csv',
                 '--out-dir', 'explicit']) == 0
    assert os.path.isfile(str(tmp_path / 'explicit' / 'bode.csv'))

    assert main(['transient', '--horizon', '50', '--out', 'wt.csv']) == 0
    assert os.path.isfile(str(tmp_path / 'from_env' / 'wt.csv'))

def test_run_and_rerun(tmp_path):
    """ A run writes its metrics and manifest, and the manifest reproduces the run """

    config = _write_config(tmp_path / 'run.yaml', dag={'preset': 'ident_arima2'})
    out_dir = str(tmp_path / 'out')

    assert main(['run', config, '--out-dir', out_dir]) == 0

    metrics_fn = os.path.join(out_dir, 'ident_iir_metrics.csv')
    manifest_fn = os.path.join(out_dir, 'ident_iir_manifest.yaml')
    with open(metrics_fn, 'rb') as f:
        first = f.read()

    with open(manifest_fn, 'r', encoding='utf-8') as f:
        manifest = yaml.safe_load(f)
    assert manifest['config']['dag']['preset'] == 'ident_arima2'
    assert manifest['config']['algorithm'] == {'rule': 'plms', 'mu': 0.02,
                                               'delta': dlms_m.nlms_delta}
    assert manifest['rng_seeds'] == [[1, 0]]
    transient_fn = os.path.join(out_dir, 'ident_iir_transient.csv')
    assert manifest['outputs'] == [metrics_fn, transient_fn]

    with open(transient_fn, 'r', encoding='utf-8') as f:
        assert f.readline() == ','.join(dlms_m.transient_cols) + '\n'

    assert main(['run', manifest_fn, '--out-dir', out_dir]) == 0
    with open(metrics_fn, 'rb') as f:
        assert f.read() == first

def test_run_errors(capsys, tmp_path):
    """ Configuration errors exit with 2, divergence with 3 """

    out_dir = str(tmp_path / 'out')

    config = _write_config(tmp_path / 'div.yaml', algorithm={'rule': 'lms', 'mu': 10.})
    assert main(['run', config, '--out-dir', out_dir]) == 3
    assert 'divergence' in capsys.readouterr().err

    config = _write_config(tmp_path / 'bad.yaml', step_size=0.1)
    assert main(['run', config, '--out-dir', out_dir]) == 2

    assert main(['run', str(tmp_path / 'missing.yaml')]) == 2

def test_run_svg(tmp_path):
    """ Test the SVG export of a run """

    (series, manifest) = dlms.run(params={'scenario': 'ident_fir', 'verbose': False,
                                          'horizon': 100}, out_dir=str(tmp_path), svg=True)

    assert len(series) == 100
    assert [os.path.basename(fn) for fn in manifest['outputs']] == ['ident_fir_metrics.csv',
                                                                     'ident_fir_metrics.svg',
                                                                     'ident_fir_transient.csv',
                                                                     'ident_fir_transient.svg']
    for fn in manifest['outputs']:
        assert os.path.isfile(fn)

def test_sweep(tmp_path):
    """ Test a sweep over the DAG presets """

    sweep_fn = tmp_path / 'sweep.yaml'
    sweep_fn.write_text(yaml.safe_dump({
        'scenario': 'ident_iir', 'verbose': False,
        'sweep': [{'label': 'gradient', 'args': {'dag': {'preset': 'gradient'}}},
                  {'label': 'arima2', 'run': True, 'args': {'dag': {'preset': 'ident_arima2'}}},
                  {'label': 'skipped', 'run': False}]}))
    out_dir = str(tmp_path / 'out')

    assert main(['sweep', str(sweep_fn), '--out-dir', out_dir]) == 0

    with open(os.path.join(out_dir, 'ident_iir_sweep.csv'), 'r', encoding='utf-8') as f:
        lines = f.read().strip().split('\n')
    assert lines[0] == ','.join(dlms.sweep_cols)
    assert [line.split(',')[0] for line in lines[1:]] == ['gradient', 'arima2']
    assert os.path.isfile(os.path.join(out_dir, 'ident_iir_sweep.txt'))
    assert os.path.isfile(os.path.join(out_dir, 'ident_iir_arima2_metrics.csv'))

    # J_D of the ARIMA2 DAG is the smallest
    j_d = [float(line.split(',')[7]) for line in lines[1:]]
    assert j_d[1] < j_d[0]

def test_sweep_rerun(tmp_path):
    """ The sweep manifest holds the resolved entries, and sweeping it reproduces the table """

    sweep_fn = tmp_path / 'sweep.yaml'
    sweep_fn.write_text(yaml.safe_dump({
        'scenario': 'ident_fir', 'verbose': False, 'horizon': 120,
        'sweep': [{'label': 'plain', 'args': {'dag': {'preset': 'gradient'}}},
                  {'label': 'ip', 'args': {'dag': {'preset': 'ident_ip'}, 'rng_seed': 3}}]}))
    first_dir = str(tmp_path / 'first')
    second_dir = str(tmp_path / 'second')

    assert main(['sweep', str(sweep_fn), '--out-dir', first_dir]) == 0

    manifest_fn = os.path.join(first_dir, 'ident_fir_sweep_manifest.yaml')
    with open(manifest_fn, 'r', encoding='utf-8') as f:
        manifest = yaml.safe_load(f)

    entries = manifest['config']['sweep']
    assert [entry['label'] for entry in entries] == ['plain', 'ip']
    assert entries[1]['args']['dag']['preset'] == 'ident_ip'
    assert entries[1]['args']['horizon'] == 120
    assert manifest['rng_seeds'] == {'plain': [[1, 0]], 'ip': [[3, 0]]}
    assert os.path.join(first_dir, 'ident_fir_ip_metrics.csv') in manifest['outputs']
    assert os.path.join(first_dir, 'ident_fir_sweep.csv') in manifest['outputs']
    for fn in manifest['outputs']:
        assert os.path.isfile(fn)

    assert main(['sweep', manifest_fn, '--out-dir', second_dir]) == 0

    for fn in ['ident_fir_sweep.csv', 'ident_fir_ip_metrics.csv']:
        with open(os.path.join(first_dir, fn), 'rb') as f1:
            with open(os.path.join(second_dir, fn), 'rb') as f2:
                assert f1.read() == f2.read()

def test_sweep_errors(tmp_path):
    """ Sweeps need a list of entries of a single scenario """

    sweep_fn = tmp_path / 'sweep.yaml'

    sweep_fn.write_text(yaml.safe_dump({'scenario': 'ident_iir'}))
    assert main(['sweep', str(sweep_fn), '--out-dir', str(tmp_path)]) == 2

    sweep_fn.write_text(yaml.safe_dump({'verbose': False,
                                        'sweep': [{'label': 'a',
                                                   'args': {'scenario': 'ident_iir'}},
                                                  {'label': 'b',
                                                   'args': {'scenario': 'ident_fir'}}]}))
    assert main(['sweep', str(sweep_fn), '--out-dir', str(tmp_path)]) == 2

def test_setup(capsys, tmp_path, monkeypatch):
    """ Test the local setup """

    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(dlms_m.out_env_var, raising=False)

    assert main(['setup']) == 0
    assert 'setup complete' in capsys.readouterr().out

    for fn in [dlms_m.dlms_params, dlms_m.dlms_sweep, dlms_m.prod_loc]:
        assert os.path.exists(str(tmp_path / fn))

    # The local parameter file is a valid configuration
    with open(dlms_m.dlms_params, 'r', encoding='utf-8') as f:
        assert yaml.safe_load(f)['scenario'] in dlms_m.scenarios

def test_design_api():
    """ Test the design and transient routines """

    report = dlms.design(DagCoefficients.preset('conjugate_gradient'), grid_size=256,
                         verbose=False)

    assert report['spr'] and not report['paa_pr']
    assert report['ssg'] == pytest.approx(10.)
    assert abs(report['log_gain_integral']) < 1e-6

    report = dlms.design(DagCoefficients([], [1.]), grid_size=256, verbose=False)
    assert report['ssg'] is None and 'ssg_error' in report

    report = dlms.transient(DagCoefficients(), 0.1, horizon=300, verbose=False)
    assert report.settling_time is not None
