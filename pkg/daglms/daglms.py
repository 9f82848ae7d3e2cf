# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains the master daglms routines. They load and resolve the configurations, call
the sub-routines, and write the data products.

Any scenario MUST have a dedicated routine in this file called 'run_XXX', with XXX the scenario
name, which can then refer to any existing/new daglms module.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

import os
import datetime
import warnings
from functools import partial

import numpy as np

from . import daglms_metadata as dlms_m
from . import daglms_tools as dlms_t
from . import daglms_design as dlms_d
from . import daglms_analysis as dlms_a
from . import daglms_experiments as dlms_e
from .daglms_core import DagCoefficients
from .daglms_tools import ConfigError, DomainError
from .daglms_version import __version__

# --------------------------------------------------------------------------------------------------
def load_config(fn):
    ''' Loads a scenario configuration, or the configuration snapshot of a run manifest.

    Args:
        fn (str): the YAML file.

    Returns:
        dict: the raw (unresolved) configuration.
    '''

    content = dlms_t.load_yaml(fn)

    if content is None:
        return {}

    if not isinstance(content, dict):
        raise ConfigError('The configuration file %s must contain a mapping.' % fn)

    # A manifest ?
    if 'daglms_version' in content and 'config' in content:
        return content['config']

    return content

def _override(raw, seed=None, nproc=None, svg=None):
    ''' Applies the command line overrides to a raw configuration. '''

    out = dict(raw)
    if seed is not None:
        out['rng_seed'] = seed
    if nproc is not None:
        out['multiprocessing'] = nproc
    if svg:
        out['svg'] = True

    return out

def _prepare_out_dir(out_dir):

    out_dir = dlms_m.get_out_dir(out_dir)
    os.makedirs(out_dir, exist_ok=True)

    return out_dir

def write_manifest(fn, config, rng_seeds, outputs, start_time):
    ''' Writes the run manifest of a set of outputs.

    Args:
        fn (str): the manifest file.
        config (dict): the configuration snapshot.
        rng_seeds (list|dict): the seeds of the random generators.
        outputs (list): the files written.
        start_time (datetime): when the work started.

    Returns:
        dict: the manifest content.
    '''

    manifest = {'daglms_version': __version__,
                'config': config,
                'rng_seeds': rng_seeds,
                'outputs': list(outputs),
                'duration_s': (datetime.datetime.now() - start_time).total_seconds(),
               }
    dlms_t.write_yaml(fn, manifest)

    return manifest

def _dag_config(dag):
    return {'c': [float(v) for v in dag.c], 'd_prime': [float(v) for v in dag.d_prime]}

# --------------------------------------------------------------------------------------------------
def run(params_fn=None, params=None, seed=None, out_dir=None, nproc=None, svg=None):
    ''' Runs one scenario, and writes its metrics and manifest.

    Args:
        params_fn (str, optional): the configuration file (or a manifest to re-run).
        params (dict, optional): a raw configuration, used instead of params_fn.
        seed (int, optional): overrides rng_seed.
        out_dir (str, optional): the output directory. Defaults to $DAGLMS_OUT_DIR, or
            ./daglms_products.
        nproc (bool|int, optional): overrides the multiprocessing setting.
        svg (bool, optional): also plot the metrics.

    Returns:
        (MetricSeries, dict): the metrics, and the manifest content.
    '''

    # Start keeping track of the time
    start_time = datetime.datetime.now()

    if params is None:
        if params_fn is None:
            raise ConfigError('A configuration file or dictionary is required.')
        params = load_config(params_fn)

    params = dlms_t.resolve_params(_override(params, seed=seed, nproc=nproc, svg=svg))
    out_dir = _prepare_out_dir(out_dir)

    # Call a function based on a string
    func = globals()['run_' + params['scenario']]
    series = func(params)

    outputs = export(series, params, out_dir, params['scenario'])

    manifest = write_manifest(os.path.join(out_dir, '%s_manifest.yaml' % params['scenario']),
                              params, dlms_e.run_seeds(params), outputs, start_time)

    if params['verbose']:
        print(' ')
        print('All done in %.01f seconds.' % manifest['duration_s'])
        print(' ')

    return (series, manifest)

def export(series, params, out_dir, prefix):
    ''' Writes the metrics of a run (CSV, and SVG if requested).

    Identification runs also get '<prefix>_transient.csv': the measured sqrt(D^2(t) / D^2(0))
    against the linearized prediction at the measured effective gain.

    Returns:
        list: the files written.
    '''

    dag = DagCoefficients.from_params(params['dag'])

    outputs = [dlms_e.export_metrics(series, os.path.join(out_dir, '%s_metrics.csv' % prefix))]

    if params['svg']:
        # Import here, so that matplotlib is only loaded when needed
        from . import daglms_plots as dlms_p

        title = '%s - %s' % (params['scenario'], series.info.get('label') or dag.describe())
        outputs += [dlms_p.plot_metrics(series, os.path.join(out_dir, '%s_metrics.svg' % prefix),
                                        title=title)]

    if params['scenario'].startswith('ident_'):
        try:
            comp = dlms_a.compare_transient_prediction(dag, series)
        except DomainError as err:
            warnings.warn('No transient comparison for %s: %s' % (prefix, err))
        else:
            fn = os.path.join(out_dir, '%s_transient.csv' % prefix)
            outputs += [dlms_t.write_csv(fn, dlms_m.transient_cols,
                                         [comp['t'], comp['measured_wtilde'],
                                          comp['predicted_wtilde']])]
            if params['svg']:
                from . import daglms_plots as dlms_p
                outputs += [dlms_p.plot_transient(
                    {'measured': (comp['t'], comp['measured_wtilde']),
                     'predicted (g = %.3g)' % comp['g']: (comp['t'], comp['predicted_wtilde'])},
                    os.path.splitext(fn)[0] + '.svg')]

    if params['verbose']:
        for fn in outputs:
            print('-> Saved %s' % fn)

    return outputs

# --------------------------------------------------------------------------------------------------
def run_ale(params):
    ''' The adaptive line enhancer scenario. '''

    series = dlms_e.run_ale(params)

    if params['verbose']:
        print('   convergence time: %s, sum of MSE: %.4g' %
              (series.info['conv_time'], series.info['sum_mse']))

    return series

def run_ident_iir(params):
    ''' Identification of the plant with its equation-error IIR model. '''

    series = dlms_e.run_identification(params)

    if params['verbose']:
        print('   J_D(N) = %.4g, J_eps(N) = %.4g' % (series.info['J_D'], series.info['J_eps']))

    return series

def run_ident_fir(params):
    ''' Identification of the plant with a FIR model. '''
    return run_ident_iir(params)

def run_ident_stochastic(params):
    ''' Identification with output noise, averaged over the noise realizations. '''

    series = dlms_e.run_identification_stochastic(params)

    if params['verbose']:
        print('   terminal D^2: %.4g' % series.info['terminal_d_squared'])
        for (t, d2) in series.info['checkpoints'].items():
            print('   D^2(%i) = %.4g' % (t, d2))

    return series

def run_anc_synthetic(params):
    ''' Feedforward noise control on synthetic paths. '''

    series = dlms_e.run_anc_synthetic(params)

    if params['verbose']:
        print('   terminal attenuation: %s dB, reached 90%% at sample %s' %
              (series.info['terminal_attenuation_db'], series.info['t_settle']))

    return series

# --------------------------------------------------------------------------------------------------
sweep_cols = ['label', 'rule', 'mu', 'c', 'd_prime', 'conv_time', 'sum_mse', 'J_D', 'J_eps',
              't_settle', 'terminal_attenuation_db']

def _sweep_single(item, out_dir):
    ''' Runs one configuration of a sweep. Returns its table row and the files written. '''

    (label, params) = item

    series = globals()['run_' + params['scenario']](params)
    outputs = export(series, params, out_dir, '%s_%s' % (params['scenario'], label))

    dag = DagCoefficients.from_params(params['dag'])
    row = [label, params['algorithm']['rule'], float(params['algorithm']['mu']),
           ' '.join('%g' % v for v in dag.c), ' '.join('%g' % v for v in dag.d_prime)]

    return (row + [series.info.get(key) for key in sweep_cols[5:]], outputs)

def sweep(sweep_fn, seed=None, out_dir=None, nproc=None, svg=None):
    ''' Runs a list of configurations of the same scenario, and tabulates their results.

    The sweep file holds a base configuration, plus a 'sweep' list of entries with a 'label', a
    'run' flag and 'args' overriding the base configuration. The manifest
    '<scenario>_sweep_manifest.yaml' holds the resolved entries, and can itself be swept again.

    Args:
        sweep_fn (str): the sweep file.
        seed (int, optional): overrides rng_seed.
        out_dir (str, optional): the output directory.
        nproc (bool|int, optional): parallelism across the configurations.
        svg (bool, optional): also plot the metrics of each configuration.

    Returns:
        list: the table rows, in the order of the sweep file.
    '''

    start_time = datetime.datetime.now()

    content = load_config(sweep_fn)
    entries = content.get('sweep')
    if not isinstance(entries, list) or not entries:
        raise ConfigError('The sweep file %s needs a non-empty "sweep" list.' % sweep_fn)

    base = _override({key: val for (key, val) in content.items() if key != 'sweep'},
                     seed=seed, svg=svg)
    # Parallel across configurations, serial inside each one
    outer = dlms_t.get_nproc(base.get('multiprocessing', False) if nproc is None else nproc)
    base['multiprocessing'] = False

    items = []
    for entry in entries:
        dlms_t.check_keys(entry, {'label': None, 'run': None, 'args': None}, where='sweep entry')
        if 'label' not in entry:
            raise ConfigError('Each sweep entry needs a label.')
        if not entry.get('run', True):
            continue

        args = entry.get('args') or {}
        dlms_t.check_keys(args, dlms_m.default_params, where='sweep.%s' % entry['label'])
        params = dlms_t.resolve_params(dlms_t.merge_params(args, base))
        items += [(str(entry['label']).replace(' ', '_'), params)]

    scenarios = set(params['scenario'] for (_, params) in items)
    if len(scenarios) > 1:
        raise ConfigError('All the configurations of a sweep must share a scenario, not: %s' %
                          ', '.join(sorted(scenarios)))
    if not items:
        raise ConfigError('No sweep entry is set to run.')

    scenario = items[0][1]['scenario']
    out_dir = _prepare_out_dir(out_dir)

    if items[0][1]['verbose']:
        print('-> Sweeping %i configurations of the %s scenario' % (len(items), scenario))

    results = dlms_t.pool_map(partial(_sweep_single, out_dir=out_dir), items, nproc=outer,
                              label='sweep')
    rows = [row for (row, _) in results]
    outputs = [fn for (_, fns) in results for fn in fns]

    outputs += [dlms_t.write_table_csv(os.path.join(out_dir, '%s_sweep.csv' % scenario),
                                       sweep_cols, rows)]
    outputs += [dlms_t.write_text(os.path.join(out_dir, '%s_sweep.txt' % scenario),
                                  dlms_t.aligned_table(sweep_cols, rows))]

    # The resolved entries, so that the manifest can be swept again as is
    config = {'sweep': [{'label': label, 'run': True, 'args': params}
                        for (label, params) in items]}
    manifest = write_manifest(os.path.join(out_dir, '%s_sweep_manifest.yaml' % scenario),
                              config, {label: dlms_e.run_seeds(params)
                                       for (label, params) in items},
                              outputs, start_time)

    if items[0][1]['verbose']:
        print(dlms_t.aligned_table(sweep_cols, rows))
        print('All done in %.01f seconds.' % manifest['duration_s'])

    return rows

# --------------------------------------------------------------------------------------------------
def design(dag, grid_size=dlms_m.grid_size, bode_fn=None, contour=None, svg=False, verbose=True):
    ''' Design report of a DAG: SPR and PR verdicts, steady-state gain and log-gain integral.

    When files are written, a '_manifest.yaml' named after the first one lists them, with the
    DAG and the grid used.

    Args:
        dag (DagCoefficients): the DAG.
        grid_size (int, optional): frequency grid of the sweeps. Defaults to 8192.
        bode_fn (str, optional): CSV file for the Bode diagram. Defaults to None.
        contour (tuple, optional): (d'1, CSV file) for the SPR/PR boundaries. Defaults to None.
        svg (bool, optional): also plot the Bode diagram and contours. Defaults to False.
        verbose (bool, optional): print the report. Defaults to True.

    Returns:
        dict: the report.
    '''

    start_time = datetime.datetime.now()

    verdict = dlms_d.spr_sweep_oracle(dag, grid_size=grid_size)

    report = {'dag': dag.describe(),
              'spr': verdict.is_spr,
              'spr_criterion': verdict.criterion_verdict,
              'min_real_part': verdict.min_real_part,
              'argmin_omega': verdict.argmin_omega,
              'paa_pr': dlms_d.paa_pr_check(dag, grid_size=grid_size),
              'ssg': None,
              'log_gain_integral': None,
              'outputs': [],
             }

    try:
        report['ssg'] = dlms_d.steady_state_gain(dag)
    except DomainError as err:
        report['ssg_error'] = str(err)

    try:
        report['log_gain_integral'] = dlms_d.log_gain_integral(dag)
    except DomainError as err:
        report['log_gain_error'] = str(err)

    config = {'dag': _dag_config(dag), 'grid_size': grid_size}

    if bode_fn is not None:
        resp = dlms_d.bode(dag, grid_size=grid_size)
        with np.errstate(divide='ignore'):
            report['outputs'] += [dlms_t.write_csv(bode_fn, dlms_m.bode_cols,
                                                   [resp.omega, resp.magnitude_db,
                                                    resp.phase_deg, resp.real_part])]
        if svg:
            from . import daglms_plots as dlms_p
            report['outputs'] += [dlms_p.plot_bode(resp, os.path.splitext(bode_fn)[0] + '.svg',
                                                   title=dag.describe())]
        config['bode'] = bode_fn

    if contour is not None:
        (d1_prime, contour_fn) = contour
        pts = dlms_d.contour_trace(d1_prime)
        report['outputs'] += [dlms_t.write_table_csv(contour_fn, dlms_m.contour_cols,
                                                     [list(pt) for pt in pts])]
        if svg:
            from . import daglms_plots as dlms_p
            report['outputs'] += [dlms_p.plot_contours(pts, d1_prime,
                                                       os.path.splitext(contour_fn)[0] + '.svg')]
        config['contour'] = {'d1_prime': float(d1_prime), 'fn': contour_fn}

    if report['outputs']:
        report['manifest'] = write_manifest(os.path.splitext(report['outputs'][0])[0] +
                                            '_manifest.yaml', config, [], report['outputs'],
                                            start_time)

    if verbose:
        yn = {True: 'Y', False: 'N', None: '-'}
        print('-> DAG %s' % report['dag'])
        print('   H_DAG SPR: %s (criterion: %s, min Re = %.3g at omega = %.4f)' %
              (yn[report['spr']], yn[report['spr_criterion']], report['min_real_part'],
               report['argmin_omega']))
        print('   H_PAA PR: %s' % yn[report['paa_pr']])
        print('   Steady-state gain: %s' % ('-' if report['ssg'] is None else
                                            '%.6g' % report['ssg']))
        print('   Log-gain integral: %s' % ('-' if report['log_gain_integral'] is None else
                                            '%.3g' % report['log_gain_integral']))
        for fn in report['outputs']:
            print('-> Saved %s' % fn)

    return report

def transient(dag, g, horizon=dlms_m.transient_horizon, band=dlms_m.settle_band, out_fn=None,
              svg=False, verbose=True):
    ''' Linearized transient of the parameter error for a given gain and DAG.

    The CSV holds the averaged feedback model iterated on a unit scalar error ('wtilde') next to
    the sensitivity step response ('predicted_wtilde'). The two coincide for a scalar regressor
    covariance.

    Args:
        dag (DagCoefficients): the DAG.
        g (float): the linearized gain.
        horizon (int, optional): number of samples. Defaults to 2000.
        band (float, optional): settling band. Defaults to 1e-3.
        out_fn (str, optional): CSV file for the trajectory. Defaults to None.
        svg (bool, optional): also plot the trajectory. Defaults to False.
        verbose (bool, optional): print the settling time. Defaults to True.

    Returns:
        TransientReport: the predicted transient.
    '''

    start_time = datetime.datetime.now()

    report = dlms_a.sensitivity_step_response(dlms_a.SensitivityModel(g, dag), horizon=horizon,
                                              band=band)

    if out_fn is not None:
        # An unstable loop overflows
        with np.errstate(over='ignore', invalid='ignore'):
            wtilde = dlms_a.averaged_feedback_oracle(dag, 1., g, horizon - 1,
                                                     return_vectors=True)[:, 0]

        outputs = [dlms_t.write_csv(out_fn, dlms_m.transient_cols,
                                    [report.t, wtilde, report.step_response])]
        if svg:
            from . import daglms_plots as dlms_p
            ref = dlms_a.sensitivity_step_response(dlms_a.SensitivityModel(g, DagCoefficients()),
                                                   horizon=horizon, band=band)
            outputs += [dlms_p.plot_transient({'DAG %s' % dag.describe():
                                               (report.t, report.step_response),
                                               'no DAG': (ref.t, ref.step_response)},
                                              os.path.splitext(out_fn)[0] + '.svg', band=band)]

        write_manifest(os.path.splitext(out_fn)[0] + '_manifest.yaml',
                       {'dag': _dag_config(dag), 'g': float(g), 'horizon': int(horizon),
                        'band': float(band)}, [], outputs, start_time)

    if verbose:
        print('-> g = %g, DAG %s' % (g, dag.describe()))
        print('   settling time (band %g): %s' % (band, report.settling_time))
        if report.predicted_speedup is not None:
            print('   speed-up over the plain algorithm: %.3g' % report.predicted_speedup)

    return report
