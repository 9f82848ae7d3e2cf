# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains the experimental scenarios: adaptive line enhancement, deterministic and
stochastic plant identification, and a synthetic feedforward noise control loop.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

import warnings
from functools import partial

import numpy as np
from scipy import signal

from . import daglms_metadata as dlms_m
from . import daglms_tools as dlms_t
from . import daglms_signal as dlms_s
from .daglms_core import (DagCoefficients, StepSizeRule, AdaptiveFilterState, MetricSeries,
                          run_filter, update)
from .daglms_tools import ConfigError

# --------------------------------------------------------------------------------------------------
def run_seeds(params):
    ''' The seed pairs (rng_seed, run index) of all the Monte Carlo runs of a configuration. '''
    return [[params['rng_seed'], run] for run in range(params['monte_carlo_runs'])]

def _setup(params, scenarios):
    ''' Checks the scenario, and builds the step-size rule and the DAG. '''

    if params['scenario'] not in scenarios:
        raise ConfigError('Scenario "%s" cannot be run here. Expected: %s' %
                          (params['scenario'], ', '.join(scenarios)))

    rule = StepSizeRule.from_params(params['algorithm'])
    dag = DagCoefficients.from_params(params['dag'])

    return (rule, dag)

def _nproc(params):
    return dlms_t.get_nproc(params['multiprocessing'])

def decay_time(d_squared, d2_0, ratio):
    ''' First sample where D^2(t) < ratio * D^2(0), None if it never gets there. '''

    below = np.nonzero(np.asarray(d_squared) < ratio * d2_0)[0]

    return int(below[0]) if len(below) else None

# --------------------------------------------------------------------------------------------------
def ale_signal(params, run):
    ''' The input of one adaptive line enhancer run: sines buried in a wideband source.

    Args:
        params (dict): the resolved configuration.
        run (int): the run index, which seeds the phases and the noise.

    Returns:
        ndarray: delay + filter_length - 1 priming samples, followed by horizon samples.
    '''

    ale = params['ale']
    n_samples = params['delay'] + params['filter_length'] - 1 + params['horizon']

    freqs = np.atleast_1d(np.asarray(ale['frequencies'], dtype=float))
    if ale['random_phases']:
        phases = np.random.default_rng([params['rng_seed'], run, 1]).uniform(0, 2 * np.pi,
                                                                            len(freqs))
    else:
        phases = np.zeros(len(freqs))

    if ale['wav_file'] is not None:
        wide = {'kind': 'file', 'path': ale['wav_file']}
    else:
        wide = {'kind': 'pink_noise', 'std': ale['noise_std'], 'pole': ale['noise_pole']}

    sig = {'kind': 'sum', 'sample_rate': ale['sample_rate'], 'length': n_samples,
           'components': [{'kind': 'multisine', 'frequencies': freqs,
                           'amplitudes': ale['amplitudes'], 'phases': phases},
                          wide]}

    return dlms_s.generate(sig, seed=[params['rng_seed'], run])

def _ale_single_run(run, params, rule, dag):
    ''' One adaptive line enhancer run. '''

    sig = ale_signal(params, run)

    return run_filter(sig, sig, rule, dag, filter_length=params['filter_length'],
                      decorrelation_delay=params['delay'],
                      approximate=params['dag']['approximate'],
                      prime=params['delay'] + params['filter_length'] - 1,
                      mse_window=params['ale']['mse_window'])

def run_ale(params):
    ''' Adaptive line enhancer: predicts the periodic part of a signal from its delayed past.

    The regressor is the input delayed by `delay` samples, the desired signal is the undelayed
    input. The MSE is averaged over monte_carlo_runs noise (and phase) realizations.

    Args:
        params (dict): the resolved configuration, with scenario 'ale'.

    Returns:
        MetricSeries: the averaged run, with 'conv_time' (first sample where the MSE reaches
        ale.conv_threshold_db, None if never) and 'sum_mse' (sum of the MSE over the first
        ale.mse_sum_horizon samples) in its info.
    '''

    (rule, dag) = _setup(params, ['ale'])
    ale = params['ale']

    if params['verbose']:
        print('-> Adaptive line enhancer: %s, DAG %s, %i runs' %
              (rule, dag.describe(), params['monte_carlo_runs']))

    series = dlms_t.pool_map(partial(_ale_single_run, params=params, rule=rule, dag=dag),
                             list(range(params['monte_carlo_runs'])), nproc=_nproc(params),
                             label='ALE runs')
    out = MetricSeries.average(series)

    with np.errstate(divide='ignore'):
        reached = np.nonzero(out.mse_db <= ale['conv_threshold_db'])[0]

    conv_time = int(reached[0]) if len(reached) else None
    if conv_time is None:
        warnings.warn('The MSE never reached %.1f dB (%s, DAG %s)' %
                      (ale['conv_threshold_db'], rule, dag.describe()))

    out.info.update({'conv_time': conv_time,
                     'sum_mse': float(np.sum(out.mse[:ale['mse_sum_horizon']])),
                    })

    return out

# --------------------------------------------------------------------------------------------------
def plant_from_params(plant):
    ''' Builds a PlantModel from the 'ident.plant' section. '''

    return dlms_s.PlantModel(plant['numerator'], plant['denominator'], delay=plant['delay'],
                             direct=plant.get('direct', 0.))

def _lag(vals, k):
    ''' vals delayed by k samples, with zero initial conditions. '''

    out = np.zeros_like(vals)
    out[k:] = vals[:len(vals) - k]

    return out

def iir_regressors(plant, u, y):
    ''' Equation-error regressors of a plant, and the matching true weights.

    Each row is [y(t-1), ..., y(t-nA), (u(t-d),) u(t-d-1), ..., u(t-d-nB)], with u(t-d) only
    present when the plant has a direct term. The true weights are [-a, (b_0,) b].

    Args:
        plant (PlantModel): the plant.
        u (ndarray): the plant input.
        y (ndarray): the measured plant output.

    Returns:
        (ndarray, ndarray): the (n, dim) regressors and the true weights.
    '''

    cols = [_lag(y, i) for i in range(1, len(plant.denominator) + 1)]
    truth = list(-plant.denominator)

    if plant.direct != 0:
        cols += [_lag(u, plant.delay)]
        truth += [plant.direct]

    cols += [_lag(u, plant.delay + j) for j in range(1, len(plant.numerator) + 1)]
    truth += list(plant.numerator)

    return (np.column_stack(cols), np.array(truth))

def fir_regressors(plant, u, filter_length):
    ''' Tap-line regressors u(t), ..., u(t-L+1) and the truncated impulse response of the plant. '''

    regs = np.column_stack([_lag(u, k) for k in range(filter_length)])

    return (regs, plant.impulse_response(filter_length))

def identification_problem(params, run=0):
    ''' Builds the data of one identification run.

    Args:
        params (dict): the resolved configuration.
        run (int, optional): run index, which seeds the output noise. Defaults to 0.

    Returns:
        (ndarray, ndarray, ndarray): the regressors, the desired output and the true weights.
    '''

    ident = params['ident']
    plant = plant_from_params(ident['plant'])

    gen = dlms_s.PrbsGenerator(ident['prbs_length'], amplitude=ident['prbs_amplitude'])
    u = gen.generate(params['horizon'])
    y = dlms_s.simulate_plant(plant, u)

    if params['noise_snr_db'] is not None:
        noise_std = np.std(y) / 10**(params['noise_snr_db'] / 20)
        rng = np.random.default_rng([params['rng_seed'], run])
        y = y + noise_std * rng.standard_normal(len(y))

    if params['scenario'] == 'ident_fir':
        (regs, truth) = fir_regressors(plant, u, params['filter_length'])
    else:
        (regs, truth) = iir_regressors(plant, u, y)

    return (regs, y, truth)

def _ident_single_run(run, params, rule, dag, offset=False):
    ''' One identification run. With offset, w(0) sits at D^2(0) = ident.d2_init from the truth. '''

    (regs, y, truth) = identification_problem(params, run)

    w_init = np.zeros(len(truth))
    if offset:
        w_init = truth - np.sqrt(params['ident']['d2_init']) * truth / np.linalg.norm(truth)

    out = run_filter(regs, y, rule, dag, approximate=params['dag']['approximate'],
                     w_init=w_init, truth=truth)
    out.info['d_squared_0'] = float((truth - w_init) @ (truth - w_init))

    return out

def _ident_runs(params, rule, dag, offset):

    series = dlms_t.pool_map(partial(_ident_single_run, params=params, rule=rule, dag=dag,
                                     offset=offset),
                             list(range(params['monte_carlo_runs'])), nproc=_nproc(params),
                             label='identification runs')

    return MetricSeries.average(series)

def run_identification(params):
    ''' Plant identification from a PRBS input, with an IIR (equation-error) or FIR model.

    Args:
        params (dict): the resolved configuration, with scenario 'ident_iir' or 'ident_fir'.

    Returns:
        MetricSeries: the run (averaged if monte_carlo_runs > 1), with 'J_D' and 'J_eps' (the
        values of the running sums at the horizon) and 'decay_time' (first sample where
        D^2 < ident.decay_ratio D^2(0)) in its info.

    .. note:: The IIR model takes its size from the plant, filter_length is only used in FIR mode.
    '''

    (rule, dag) = _setup(params, ['ident_iir', 'ident_fir'])

    if params['verbose']:
        print('-> Identification (%s): %s, DAG %s' % (params['scenario'], rule, dag.describe()))

    out = _ident_runs(params, rule, dag, offset=False)
    out.info.update({'J_D': float(out.j_d[-1]),
                     'J_eps': float(out.j_eps[-1]),
                     'decay_time': decay_time(out.d_squared, out.info['d_squared_0'],
                                              params['ident']['decay_ratio']),
                    })

    return out

def run_identification_stochastic(params):
    ''' Equation-error identification with white noise on the plant output.

    The runs start from w(0) = w - sqrt(ident.d2_init) w / ||w||, and D^2(t) is averaged over the
    noise realizations. Checkpoints at 25, 50 and 75 % of the horizon compare the DAG
    trajectory with the plain algorithm on the same data.

    Args:
        params (dict): the resolved configuration, with scenario 'ident_stochastic'.

    Returns:
        MetricSeries: the averaged run. Its info holds 'terminal_d_squared', 'unbiased'
        (terminal D^2 < 0.05 D^2(0)), 'checkpoints' (sample -> D^2) and, for a non-trivial DAG,
        'baseline_checkpoints' and 'improved'.
    '''

    (rule, dag) = _setup(params, ['ident_stochastic'])

    if params['noise_snr_db'] is None:
        raise ConfigError('The stochastic identification needs noise_snr_db.')

    if params['verbose']:
        print('-> Stochastic identification at %.1f dB: %s, DAG %s, %i runs' %
              (params['noise_snr_db'], rule, dag.describe(), params['monte_carlo_runs']))

    out = _ident_runs(params, rule, dag, offset=True)

    n = len(out)
    marks = [n // 4, n // 2, 3 * n // 4]

    terminal = float(out.d_squared[-1])
    out.info.update({'J_D': float(out.j_d[-1]),
                     'J_eps': float(out.j_eps[-1]),
                     'terminal_d_squared': terminal,
                     'unbiased': bool(terminal < 0.05 * out.info['d_squared_0']),
                     'checkpoints': {k: float(out.d_squared[k]) for k in marks},
                    })

    if not out.info['unbiased']:
        warnings.warn('Terminal D^2 = %.3g is not below 5%% of D^2(0) (DAG %s)' %
                      (terminal, dag.describe()))

    if not dag.is_identity:
        base = _ident_runs(params, rule, DagCoefficients(label='gradient'), offset=True)
        out.info['baseline_checkpoints'] = {k: float(base.d_squared[k]) for k in marks}
        out.info['improved'] = all(out.d_squared[k] < base.d_squared[k] for k in marks)

        if not out.info['improved']:
            warnings.warn('DAG %s is not faster than the plain algorithm at the checkpoints.' %
                          dag.describe())

    return out

# --------------------------------------------------------------------------------------------------
def anc_paths(anc):
    ''' The secondary (G), feedback (M) and primary (D) paths of the noise control loop.

    Returns:
        dict: PlantModel per path name.

    Raises:
        ConfigError: if a path is unstable, or if M is not strictly proper (the internal positive
            loop could not be closed sample by sample).
    '''

    paths = {}
    for (name, path) in anc['paths'].items():
        if path['denominator'] is None:
            paths[name] = dlms_s.PlantModel.resonant(path['resonance'], path['pole'],
                                                     path['numerator'], path['delay'],
                                                     anc['sample_rate'])
        else:
            paths[name] = dlms_s.PlantModel(path['numerator'], path['denominator'],
                                            delay=path['delay'])

    if paths['M'].b[0] != 0:
        raise ConfigError('The feedback path M must be strictly proper.')

    return paths

def anc_disturbance(anc, n_samples, rng):
    ''' Band-limited noise around band_center plus pure tones.

    Args:
        anc (dict): the 'anc' configuration section.
        n_samples (int): the length.
        rng (Generator): the noise generator.

    Returns:
        ndarray: the disturbance s(t).
    '''

    dist = anc['disturbance']
    fs = anc['sample_rate']

    (b, a) = signal.iirpeak(dist['band_center'], dist['band_q'], fs=fs)
    out = signal.lfilter(b, a, dist['noise_std'] * rng.standard_normal(n_samples))

    t = np.arange(n_samples) / fs
    for freq in dist['tone_frequencies']:
        out += dist['tone_amplitude'] * np.sin(2 * np.pi * freq * t)

    return out

def attenuation(open_loop, residual, window):
    ''' Attenuation in dB: ratio of the mean squares over a trailing window.

    NaN until the window is full, and wherever the open-loop signal is zero. A record shorter
    than the window is NaN throughout.
    '''

    def power(vals):
        out = np.full(len(vals), np.nan)
        if window > len(vals):
            return out
        sums = np.concatenate([[0.], np.cumsum(np.asarray(vals, dtype=float)**2)])
        out[window - 1:] = (sums[window:] - sums[:len(sums) - window]) / window
        return out

    (p_x, p_nu) = (power(open_loop), power(residual))

    with np.errstate(divide='ignore', invalid='ignore'):
        out = 10 * np.log10(p_x / p_nu)
    out[~(p_x > 0)] = np.nan

    return out

def _anc_single_run(run, params, rule, dag):
    ''' One run of the noise control loop. '''

    anc = params['anc']
    n_taps = params['filter_length']
    n_samples = params['horizon']

    paths = anc_paths(anc)
    s = anc_disturbance(anc, n_samples, np.random.default_rng([params['rng_seed'], run]))
    x = dlms_s.simulate_plant(paths['D'], s)

    ctrl_to_res = paths['G'].streamer()        # u -> residual
    reg_filter = paths['G'].streamer()         # v -> filtered regressor
    ctrl_to_ref = paths['M'].streamer()        # u -> measured reference
    model_a = dlms_s.StreamingFilter(paths['M'].a)
    model_b = dlms_s.StreamingFilter(paths['M'].b)

    approximate = params['dag']['approximate']
    state = AdaptiveFilterState(n_taps, dag)
    v_line = np.zeros(n_taps)

    e_prior = np.zeros(n_samples)
    e_post = np.zeros(n_samples)
    residual = np.zeros(n_samples)

    for t in range(n_samples):
        y_ref = s[t] + ctrl_to_ref.peek()
        v = model_b.peek() - model_a.step(y_ref)

        v_line[1:] = v_line[:-1]
        v_line[0] = v
        state.push(reg_filter.step(v))

        w_pred = state.weights if approximate else state.predictor_weights()
        u = float(w_pred @ v_line)
        ctrl_to_ref.step(u)
        model_b.step(u)

        residual[t] = x[t] + ctrl_to_res.step(u)
        rec = update(state, rule, dag, approximate=approximate, e_prior=-residual[t])
        e_prior[t] = rec.e_prior
        e_post[t] = rec.e_posterior

    window = int(round(anc['window_seconds'] * anc['sample_rate']))

    out = MetricSeries(e_prior, e_post, attenuation_db=attenuation(x, residual, window),
                       info={'n_weights': n_taps})
    out.weights = state.weights

    return out

def run_anc_synthetic(params):
    ''' Feedforward noise control with a Youla-Kucera FIR parametrization on synthetic paths.

    The central controller is R0 = 0, S0 = 1, so the internal positive loop has the poles of A_M.
    The regressor is the reference estimate v = B_M u - A_M y_ref filtered by G, and the a-priori
    error is the negated residual.

    Args:
        params (dict): the resolved configuration, with scenario 'anc_synthetic'.

    Returns:
        MetricSeries: the run (averaged if monte_carlo_runs > 1), with 'terminal_attenuation_db'
        and 't_settle' (first sample where the attenuation reaches anc.settle_fraction of its
        terminal value, None if undefined) in its info.
    '''

    (rule, dag) = _setup(params, ['anc_synthetic'])
    anc = params['anc']

    if params['verbose']:
        print('-> Synthetic noise control: %s, DAG %s, %i taps' %
              (rule, dag.describe(), params['filter_length']))

    series = dlms_t.pool_map(partial(_anc_single_run, params=params, rule=rule, dag=dag),
                             list(range(params['monte_carlo_runs'])), nproc=_nproc(params),
                             label='noise control runs')
    out = MetricSeries.average(series)

    terminal = out.attenuation_db[-1]
    t_settle = None
    if np.isfinite(terminal):
        reached = np.nonzero(out.attenuation_db >= anc['settle_fraction'] * terminal)[0]
        t_settle = int(reached[0]) if len(reached) else None

    out.info.update({'terminal_attenuation_db': None if np.isnan(terminal) else float(terminal),
                     't_settle': t_settle,
                    })

    return out

# --------------------------------------------------------------------------------------------------
def export_metrics(series, fn):
    ''' Writes a MetricSeries to a CSV file.

    Args:
        series (MetricSeries): the metrics.
        fn (str): the destination file.

    Returns:
        str: the filename.
    '''

    return dlms_t.write_csv(fn, dlms_m.metric_cols, series.columns())
