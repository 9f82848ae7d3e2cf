# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains the adaptive FIR predictor: the dynamic adaptation gain (DAG) coefficients,
the step-size rules (LMS, NLMS, PLMS), the filter state and the update recursion.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

from collections import namedtuple

import numpy as np

from . import daglms_metadata as dlms_m
from .daglms_tools import ConfigError, DivergenceError

# --------------------------------------------------------------------------------------------------
def _as_coeffs(vals, name):
    ''' Converts a list of coefficients to a float array, dropping trailing zeros. '''

    try:
        vals = np.atleast_1d(np.asarray(vals if vals is not None else [], dtype=float))
    except (TypeError, ValueError) as err:
        raise ConfigError('Invalid %s coefficients: %s' % (name, vals)) from err

    if vals.ndim != 1 or not np.all(np.isfinite(vals)):
        raise ConfigError('Invalid %s coefficients: %s' % (name, vals))

    return np.trim_zeros(vals, 'b')

class DagCoefficients:
    ''' The dynamic adaptation gain H_DAG = C(q^-1) / D'(q^-1).

    C = 1 + c_1 q^-1 + ... + c_nC q^-nC and D' = 1 - d'_1 q^-1 - ... - d'_nD' q^-nD'. The
    integrated denominator (1 - q^-1) D' = 1 - d_1 q^-1 - ... - d_nD q^-nD has n_D = n_D' + 1
    coefficients d_i = d'_i - d'_{i-1}, with d'_0 = -1 and d'_nD = 0.

    Args:
        c (list, optional): c_1, ..., c_nC. Defaults to [].
        d_prime (list, optional): d'_1, ..., d'_nD'. Defaults to [].
        label (str, optional): a name for the outputs. Defaults to a compact coefficient string.

    .. note:: Trailing zero coefficients are dropped, so (0, 0, 0) is the identity DAG and
              reproduces the plain algorithm.
    '''

    def __init__(self, c=(), d_prime=(), label=None):

        self.c = _as_coeffs(c, 'c')
        self.d_prime = _as_coeffs(d_prime, "d'")

        # d_i = d'_i - d'_{i-1}
        ext = np.concatenate([[-1.], self.d_prime, [0.]])
        self.d = np.diff(ext)

        self.label = label if label is not None else self.describe()

    @property
    def n_c(self):
        return len(self.c)

    @property
    def n_d(self):
        return len(self.d)

    @property
    def numerator(self):
        ''' [1, c_1, ..., c_nC] '''
        return np.concatenate([[1.], self.c])

    @property
    def denominator(self):
        ''' [1, -d'_1, ..., -d'_nD'] '''
        return np.concatenate([[1.], -self.d_prime])

    @property
    def is_identity(self):
        return self.n_c == 0 and len(self.d_prime) == 0

    def arima2_triple(self):
        ''' Returns (c1, c2, d'1), or None if the DAG does not have the ARIMA2 structure. '''

        if self.n_c > 2 or len(self.d_prime) > 1:
            return None

        c = np.concatenate([self.c, np.zeros(2 - self.n_c)])
        d1p = self.d_prime[0] if len(self.d_prime) else 0.

        return (float(c[0]), float(c[1]), float(d1p))

    def describe(self):
        ''' A compact string with the coefficient values. '''
        return 'c=[%s] dp=[%s]' % (' '.join('%g' % v for v in self.c),
                                   ' '.join('%g' % v for v in self.d_prime))

    def as_params(self):
        ''' The coefficients, as a configuration section. '''
        return {'c': [float(v) for v in self.c], 'd_prime': [float(v) for v in self.d_prime]}

    def __repr__(self):
        return 'DagCoefficients(%s)' % self.describe()

    @classmethod
    def arima2(cls, c1, c2, d1_prime, label=None):
        ''' The 2nd order ARIMA DAG (1 + c1 q^-1 + c2 q^-2) / (1 - d'1 q^-1). '''
        return cls([c1, c2], [d1_prime], label=label)

    @classmethod
    def mai(cls, c, label=None):
        ''' Moving average with integrator: C only, D' = 1. '''
        return cls(c, [], label=label)

    @classmethod
    def ari(cls, d_prime, label=None):
        ''' Autoregressive with integrator: C = 1, D' only. '''
        return cls([], d_prime, label=label)

    @classmethod
    def preset(cls, name):
        ''' One of the named DAG settings of daglms_metadata.dag_presets. '''

        if name not in dlms_m.dag_presets:
            raise ConfigError('Unknown DAG preset "%s". Valid: %s' %
                              (name, ', '.join(dlms_m.dag_presets)))

        return cls.arima2(*dlms_m.dag_presets[name], label=name)

    @classmethod
    def from_params(cls, params):
        ''' Builds the DAG from the 'dag' section of a configuration. '''

        if params.get('preset') is not None:
            return cls.preset(params['preset'])

        return cls(params.get('c', []), params.get('d_prime', []))

def dag_presets():
    ''' All the named DAG settings, as a dict of DagCoefficients. '''
    return {name: DagCoefficients.preset(name) for name in dlms_m.dag_presets}

def momentum_dag(d1_prime):
    ''' The momentum back-propagation special case.

    Args:
        d1_prime (float): the momentum coefficient.

    Returns:
        (DagCoefficients, float): the conjugate-gradient DAG and the factor (1 - d'1) by which
        the step size must be multiplied.
    '''

    return (DagCoefficients.ari([d1_prime], label='momentum'), 1. - d1_prime)

# --------------------------------------------------------------------------------------------------
class StepSizeRule:
    ''' How the effective step size mu(t) is obtained from mu and r(t).

    Args:
        kind (str): 'lms' (mu), 'nlms' (mu / (delta + r'r)) or 'plms' (mu / (1 + mu r'r)).
        mu (float): the adaptation gain.
        delta (float, optional): the NLMS regularization. Defaults to 1e-16.
    '''

    kinds = ('lms', 'nlms', 'plms')

    def __init__(self, kind, mu, delta=dlms_m.nlms_delta):

        if kind not in self.kinds:
            raise ConfigError('Unknown step-size rule "%s". Valid: %s' %
                              (kind, ', '.join(self.kinds)))
        try:
            self.mu = float(mu)
            self.delta = float(delta)
        except (TypeError, ValueError) as err:
            raise ConfigError('Invalid step size: mu=%s, delta=%s' % (mu, delta)) from err

        if self.mu < 0:
            raise ConfigError('mu must be >= 0, not: %s' % mu)
        if self.delta < 0:
            raise ConfigError('delta must be >= 0, not: %s' % delta)

        self.kind = kind

    def __call__(self, rr):
        ''' The effective step size, given r(t)'r(t). '''

        if self.kind == 'lms':
            return self.mu
        if self.kind == 'nlms':
            return self.mu / (self.delta + rr)
        return self.mu / (1. + self.mu * rr)

    def __repr__(self):
        if self.kind == 'nlms':
            return 'StepSizeRule(nlms, mu=%g, delta=%g)' % (self.mu, self.delta)
        return 'StepSizeRule(%s, mu=%g)' % (self.kind, self.mu)

    @classmethod
    def from_params(cls, params):
        ''' Builds the rule from the 'algorithm' section of a configuration. '''
        return cls(params['rule'], params['mu'], params.get('delta', dlms_m.nlms_delta))

def step_size(rule, r):
    ''' The effective step size mu(t) for the regressor r(t). '''
    r = np.asarray(r, dtype=float)
    return rule(float(r @ r))

# --------------------------------------------------------------------------------------------------
UpdateRecord = namedtuple('UpdateRecord', ['e_prior', 'e_posterior', 'mu_t', 'y_prior',
                                           'y_posterior'])

class AdaptiveFilterState:
    ''' State of an adaptive FIR predictor running with a given DAG.

    Args:
        n_weights (int): length of the weight vector.
        dag (DagCoefficients): the dynamic adaptation gain.
        w_init (ndarray, optional): initial weights. Defaults to zeros.

    Attributes:
        weights (ndarray): the current weights w(t).
        weight_history (ndarray): rows w(t-1), ..., w(t-n_D).
        correction_history (ndarray): rows mu(k) r(k) e(k) for k = t-1, ..., t-n_C.
        regressor (ndarray): r(t).
        t (int): the number of updates performed so far.
    '''

    def __init__(self, n_weights, dag, w_init=None):

        self.n_weights = int(n_weights)
        self.dag = dag

        if w_init is None:
            w_init = np.zeros(self.n_weights)
        w_init = np.asarray(w_init, dtype=float)
        if w_init.shape != (self.n_weights,):
            raise ConfigError('Initial weights must have length %i, not %i' %
                              (self.n_weights, len(w_init)))

        self.weights = w_init.copy()
        self.weight_history = np.tile(w_init, (dag.n_d, 1))
        self.correction_history = np.zeros((dag.n_c, self.n_weights))
        self.regressor = np.zeros(self.n_weights)
        self.t = 0

    def push(self, sample):
        ''' Shifts a new sample into a tap-line regressor. '''
        self.regressor[1:] = self.regressor[:-1]
        self.regressor[0] = sample

    def set_regressor(self, r):
        ''' Replaces the regressor by an explicit observation vector. '''
        self.regressor[:] = r

    def predictor_weights(self):
        ''' The weights w0(t-1) = sum_i d_i w(t-i) + sum_j c_j mu(t-j) r(t-j) e(t-j). '''

        w0 = self.dag.d @ self.weight_history
        if self.dag.n_c:
            w0 = w0 + self.dag.c @ self.correction_history

        return w0

# --------------------------------------------------------------------------------------------------
def predict_prior(state, r=None, approximate=False):
    ''' The a-priori prediction y(t) = w0(t-1)' r(t).

    Args:
        state (AdaptiveFilterState): the filter state.
        r (ndarray, optional): a new regressor, replacing the one in the state. Defaults to None.
        approximate (bool, optional): use w(t-1) in place of w0(t-1). Defaults to False.

    Returns:
        float: the a-priori prediction.
    '''

    if r is not None:
        state.set_regressor(r)

    w_pred = state.weights if approximate else state.predictor_weights()

    return float(w_pred @ state.regressor)

# --------------------------------------------------------------------------------------------------
def update(state, rule, dag, x=None, approximate=False, e_prior=None):
    ''' One step of the DAG-augmented VS-LMS recursion.

    w(t) = sum_i d_i w(t-i) + mu(t) r(t) e(t) + sum_j c_j mu(t-j) r(t-j) e(t-j)

    Args:
        state (AdaptiveFilterState): the filter state, with r(t) already in place.
        rule (StepSizeRule): the step-size rule.
        dag (DagCoefficients): the dynamic adaptation gain.
        x (float): the desired sample x(t).
        approximate (bool, optional): predict with w(t-1) instead of w0(t-1). Defaults to False.
        e_prior (float, optional): an externally measured a-priori error, replacing x - y(t)
            (used when the error is the output of a physical loop). Defaults to None.

    Returns:
        UpdateRecord: the errors, step size and predictions of this step.

    Raises:
        DivergenceError: if the input or the weights are not finite, or ||w(t)|| > 1e8.
    '''

    r = state.regressor
    w0 = state.predictor_weights()
    w_pred = state.weights if approximate else w0

    y_prior = float(w_pred @ r)

    if e_prior is None:
        e_prior = x - y_prior

    if not np.isfinite(e_prior) or not np.all(np.isfinite(r)):
        raise DivergenceError('Non-finite input at sample %i (%s, DAG %s)' %
                              (state.t, rule, dag.label), sample=state.t)

    rr = float(r @ r)
    mu_t = rule(rr)

    corr = mu_t * r * e_prior
    w_new = w0 + corr

    norm = float(np.sqrt(w_new @ w_new))
    if not np.isfinite(norm) or norm > dlms_m.divergence_norm:
        raise DivergenceError('Weights diverged at sample %i: ||w|| = %.3g (%s, DAG %s)' %
                              (state.t, norm, rule, dag.label), sample=state.t, norm=norm)

    # Rotate the histories
    if dag.n_d > 1:
        state.weight_history[1:] = state.weight_history[:-1]
    state.weight_history[0] = w_new
    if dag.n_c:
        if dag.n_c > 1:
            state.correction_history[1:] = state.correction_history[:-1]
        state.correction_history[0] = corr

    state.weights = w_new
    state.t += 1

    y_post = float(w_new @ r)
    if rule.kind == 'plms':
        e_post = e_prior / (1. + rule.mu * rr)
    elif x is None:
        e_post = e_prior - float(corr @ r)
    else:
        e_post = x - y_post

    return UpdateRecord(e_prior, e_post, mu_t, y_prior, y_post)

# --------------------------------------------------------------------------------------------------
def trailing_mean(vals, window):
    ''' Mean over the last `window` samples (fewer at the start). '''

    vals = np.asarray(vals, dtype=float)
    n = len(vals)
    sums = np.convolve(vals, np.ones(window))[:n]

    return sums / np.minimum(np.arange(1, n + 1), window)

class MetricSeries:
    ''' Time-indexed record of an adaptive filter run.

    Args:
        e_prior (ndarray): the a-priori errors e(t).
        e_posterior (ndarray): the a-posteriori errors.
        d_squared (ndarray, optional): the parametric distance D^2(t) after each update.
        mse (ndarray, optional): the windowed mean square of e(t). Defaults to a trailing mean
            of e(t)^2 over `mse_window` samples.
        attenuation_db (ndarray, optional): the attenuation, for noise control runs.
        j_eps (ndarray, optional): running sum of the squared a-posteriori errors. Defaults to the
            cumulated e_posterior**2.
        j_d (ndarray, optional): running sum of D^2. Defaults to the cumulated d_squared.
        mse_window (int, optional): the MSE window. Defaults to 100.
        info (dict, optional): scalar results (convergence time, sums, ...).
    '''

    def __init__(self, e_prior, e_posterior, d_squared=None, mse=None, attenuation_db=None,
                 j_eps=None, j_d=None, mse_window=100, info=None):

        self.e_prior = np.asarray(e_prior, dtype=float)
        self.e_posterior = np.asarray(e_posterior, dtype=float)
        n = len(self.e_prior)
        nans = np.full(n, np.nan)

        self.t = np.arange(n)
        self.d_squared = nans.copy() if d_squared is None else np.asarray(d_squared, dtype=float)
        self.attenuation_db = nans.copy() if attenuation_db is None else \
                              np.asarray(attenuation_db, dtype=float)
        self.mse = trailing_mean(self.e_prior**2, mse_window) if mse is None else \
                   np.asarray(mse, dtype=float)
        self.j_eps = np.cumsum(self.e_posterior**2) if j_eps is None else np.asarray(j_eps)
        self.j_d = np.cumsum(self.d_squared) if j_d is None else np.asarray(j_d)

        self.info = {} if info is None else dict(info)

    def __len__(self):
        return len(self.t)

    @property
    def mse_db(self):
        ''' The MSE in dB; an identically zero error gives -inf. '''
        with np.errstate(divide='ignore'):
            return 10 * np.log10(self.mse)

    def columns(self):
        ''' The exported columns, in the order of daglms_metadata.metric_cols. '''
        return [self.t, self.e_prior, self.e_posterior, self.mse_db, self.d_squared,
                self.j_eps, self.j_d, self.attenuation_db]

    @classmethod
    def average(cls, series):
        ''' Averages a list of runs, samplewise. Scalar info is taken from the first run. '''

        def mean(attr):
            return np.mean([getattr(s, attr) for s in series], axis=0)

        out = cls(mean('e_prior'), mean('e_posterior'), d_squared=mean('d_squared'),
                  mse=mean('mse'), attenuation_db=mean('attenuation_db'),
                  j_eps=mean('j_eps'), j_d=mean('j_d'), info=series[0].info)
        out.info['runs'] = len(series)

        return out

# --------------------------------------------------------------------------------------------------
def run_filter(d, x, rule, dag, filter_length=None, decorrelation_delay=None, approximate=False,
               w_init=None, truth=None, prime=0, mse_window=100):
    ''' Runs the adaptive filter over a whole record.

    Args:
        d (ndarray): the input. 1D: samples shifted into a tap line of `filter_length` taps.
            2D: one explicit regressor per row.
        x (ndarray): the desired signal, same length as d.
        rule (StepSizeRule): the step-size rule.
        dag (DagCoefficients): the dynamic adaptation gain.
        filter_length (int, optional): number of taps, for 1D inputs.
        decorrelation_delay (int, optional): delay between the input tap line and the desired
            signal (adaptive line enhancer). Defaults to None (no delay).
        approximate (bool, optional): predict with w(t-1). Defaults to False.
        w_init (ndarray, optional): initial weights. Defaults to zeros.
        truth (ndarray, optional): the true weights, to compute D^2(t). Defaults to None.
        prime (int, optional): number of leading samples used only to fill the tap line.
            Defaults to 0.
        mse_window (int, optional): window of the MSE. Defaults to 100.

    Returns:
        MetricSeries: one entry per adapted sample.
    '''

    d = np.asarray(d, dtype=float)
    x = np.asarray(x, dtype=float)

    if len(d) != len(x):
        raise ConfigError('Input and desired signals differ in length: %i vs %i' %
                          (len(d), len(x)))

    if d.ndim == 2:
        filter_length = d.shape[1]
    elif filter_length is None or filter_length < 1:
        raise ConfigError('A tap-line filter needs a filter_length >= 1.')

    delay = decorrelation_delay or 0
    state = AdaptiveFilterState(filter_length, dag, w_init=w_init)

    n_out = len(x) - prime
    e_prior = np.zeros(n_out)
    e_post = np.zeros(n_out)
    mu_t = np.zeros(n_out)
    rr = np.zeros(n_out)
    d2 = None if truth is None else np.zeros(n_out)

    for t in range(len(x)):
        if d.ndim == 2:
            state.set_regressor(d[t])
        else:
            state.push(d[t - delay] if t >= delay else 0.)

        if t < prime:
            continue

        rec = update(state, rule, dag, x[t], approximate=approximate)

        k = t - prime
        e_prior[k] = rec.e_prior
        e_post[k] = rec.e_posterior
        mu_t[k] = rec.mu_t
        rr[k] = state.regressor @ state.regressor
        if truth is not None:
            err = truth - state.weights
            d2[k] = err @ err

    info = {'mean_mu_t': float(np.mean(mu_t)) if n_out else 0.,
            'mean_rr': float(np.mean(rr)) if n_out else 0.,
            'n_weights': filter_length,
           }
    out = MetricSeries(e_prior, e_post, d_squared=d2, mse_window=mse_window, info=info)
    out.weights = state.weights

    return out
