# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains the linearized transient analysis of the DAG-augmented algorithms, and the
averaged equivalent-feedback oracle.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

import warnings

import numpy as np
from scipy import signal

from . import daglms_metadata as dlms_m
from .daglms_core import DagCoefficients
from .daglms_signal import roots_inside
from .daglms_tools import DomainError, NumericError

# --------------------------------------------------------------------------------------------------
class SensitivityModel:
    ''' The linearized adaptation loop: an integrator, the DAG and a scalar gain g = F E_r.

    Args:
        g (float): the linearized gain, > 0.
        dag (DagCoefficients): the DAG.
    '''

    def __init__(self, g, dag):

        if not g > 0:
            raise DomainError('The linearized gain must be > 0, not: %s' % g)

        self.g = float(g)
        self.dag = dag

    def polynomials(self):
        ''' Numerator and denominator of S = (1 - q^-1) D' / ((1 - q^-1) D' + g C). '''

        num = np.polymul([1., -1.], self.dag.denominator)
        gc = self.g * self.dag.numerator

        n = max(len(num), len(gc))
        den = np.pad(num, (0, n - len(num))) + np.pad(gc, (0, n - len(gc)))

        return (num, den)

class TransientReport:
    ''' Result of a linearized transient simulation.

    Attributes:
        step_response (ndarray): the parameter error w~(t), with w~(0) = 1.
        settling_time (int): first sample after which |w~| stays inside the band, None if the
            loop is unstable or does not settle within the horizon.
        predicted_speedup (float): settling time of the plain algorithm at the same gain, divided
            by this one.
        stable (bool): whether the closed loop poles are inside the unit circle.
        band (float): the settling band.
    '''

    def __init__(self, step_response, settling_time, stable, band, predicted_speedup=None):
        self.step_response = step_response
        self.settling_time = settling_time
        self.stable = stable
        self.band = band
        self.predicted_speedup = predicted_speedup

    @property
    def t(self):
        return np.arange(len(self.step_response))

# --------------------------------------------------------------------------------------------------
def settling_time(response, band):
    ''' First index after which |response| stays below band, None if it never does. '''

    outside = np.nonzero(np.abs(response) > band)[0]

    if len(outside) == 0:
        return 0
    if outside[-1] == len(response) - 1:
        return None

    return int(outside[-1] + 1)

def _step_response(model, horizon):
    ''' Unit initial error followed by the sensitivity function response to a unit step. '''

    (num, den) = model.polynomials()
    stable = roots_inside(den)

    with np.errstate(over='ignore', invalid='ignore'):
        out = signal.lfilter(num, den, np.ones(horizon - 1))

    return (np.concatenate([[1.], out]), stable)

def sensitivity_step_response(model, horizon=dlms_m.transient_horizon, band=dlms_m.settle_band):
    ''' Transient of the parameter error predicted by the linearized model.

    Args:
        model (SensitivityModel): the linearized loop.
        horizon (int, optional): number of samples. Defaults to 2000.
        band (float, optional): settling band, as a fraction of the unit initial error.
            Defaults to 1e-3.

    Returns:
        TransientReport: the predicted transient.
    '''

    (resp, stable) = _step_response(model, horizon)

    if not stable:
        warnings.warn('Unstable linearized loop for g=%g and %s' % (model.g,
                                                                   model.dag.describe()))
        return TransientReport(resp, None, False, band)

    settle = settling_time(resp, band)
    if settle is None:
        warnings.warn('No settling within %i samples for g=%g and %s' %
                      (horizon, model.g, model.dag.describe()))

    # The plain algorithm at the same gain, as reference
    (ref, _) = _step_response(SensitivityModel(model.g, DagCoefficients()), horizon)
    ref_settle = settling_time(ref, band)

    speedup = None
    if settle and ref_settle:
        speedup = ref_settle / settle

    return TransientReport(resp, settle, True, band, predicted_speedup=speedup)

# --------------------------------------------------------------------------------------------------
def averaged_feedback_oracle(dag, cov, mu, horizon, w_init=None, return_vectors=False):
    ''' Iterates the averaged equivalent-feedback model of the DAG-augmented algorithm.

    w~(t+1) = w~(t) - mu E_r v(t+1), with v = H_DAG[w~]. The current-sample coefficient of H_DAG
    is 1, so each step is the linear solve
    (I + mu E_r) w~(t+1) = w~(t) - mu E_r (sum_j c_j w~(t+1-j) + sum_i d'_i v(t+1-i)).

    Args:
        dag (DagCoefficients): the DAG.
        cov (ndarray): E_r, the regressor covariance (positive definite, or a scalar).
        mu (float): the adaptation gain (assumed small).
        horizon (int): number of steps.
        w_init (ndarray, optional): w~(0). Defaults to a vector of ones.
        return_vectors (bool, optional): return the vectors instead of their norms.
            Defaults to False.

    Returns:
        ndarray: the horizon+1 norms ||w~(t)||, or the (horizon+1, n) vectors.

    Raises:
        NumericError: if the implicit step matrix is singular.

    .. note:: The DAG filter only sees w~(1), w~(2), ...: its initial state is zero.
    '''

    cov = np.atleast_2d(np.asarray(cov, dtype=float))
    n = cov.shape[0]

    w = np.ones(n) if w_init is None else np.asarray(w_init, dtype=float).copy()

    mat = np.eye(n) + mu * cov
    w_hist = np.zeros((max(dag.n_c, 1), n))        # w~(t), w~(t-1), ... as seen by the DAG
    v_hist = np.zeros((max(len(dag.d_prime), 1), n))

    out = np.zeros((horizon + 1, n))
    out[0] = w

    for t in range(horizon):
        rhs = w.copy()
        if dag.n_c:
            rhs -= mu * cov @ (dag.c @ w_hist[:dag.n_c])
        if len(dag.d_prime):
            rhs -= mu * cov @ (dag.d_prime @ v_hist[:len(dag.d_prime)])

        try:
            w_new = np.linalg.solve(mat, rhs)
        except np.linalg.LinAlgError as err:
            raise NumericError('Singular implicit step in the averaged model: %s' % err) from err

        v_new = w_new.copy()
        if dag.n_c:
            v_new += dag.c @ w_hist[:dag.n_c]
        if len(dag.d_prime):
            v_new += dag.d_prime @ v_hist[:len(dag.d_prime)]

        w_hist[1:] = w_hist[:-1]
        w_hist[0] = w_new
        v_hist[1:] = v_hist[:-1]
        v_hist[0] = v_new

        w = w_new
        out[t + 1] = w

    if return_vectors:
        return out

    return np.sqrt(np.sum(out**2, axis=1))

# --------------------------------------------------------------------------------------------------
def compare_transient_prediction(dag, series, band=dlms_m.settle_band):
    ''' Sets the linearized prediction against a measured parametric distance decay.

    The linearized gain is g = mu(t) r'r / dim, averaged over the run.

    Args:
        dag (DagCoefficients): the DAG used for the run.
        series (MetricSeries): a run with d_squared and the 'mean_mu_t', 'mean_rr',
            'n_weights' info entries.
        band (float, optional): settling band. Defaults to 1e-3.

    Returns:
        dict: 't', 'measured_wtilde' (sqrt(D^2(t) / D^2(0))), 'predicted_wtilde', 'g',
        'measured_settling', 'predicted_settling'.
    '''

    d2 = np.asarray(series.d_squared)
    d2_0 = series.info.get('d_squared_0', d2[0])
    if not np.all(np.isfinite(d2)) or not d2_0 > 0:
        raise DomainError('The run has no usable parametric distance.')

    g = series.info['mean_mu_t'] * series.info['mean_rr'] / series.info['n_weights']

    measured = np.concatenate([[1.], np.sqrt(d2 / d2_0)])
    report = sensitivity_step_response(SensitivityModel(g, dag), horizon=len(measured), band=band)

    return {'t': np.arange(len(measured)),
            'measured_wtilde': measured,
            'predicted_wtilde': report.step_response,
            'g': g,
            'measured_settling': settling_time(measured, band),
            'predicted_settling': report.settling_time,
           }
