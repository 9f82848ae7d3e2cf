# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains test functions related to daglms_analysis.py

Created October 2026, the daglms developers
'''

# Import from python
import numpy as np
import pytest

# Import from daglms
from daglms import daglms_tools as dlms_t
from daglms.daglms_core import DagCoefficients
from daglms.daglms_analysis import (SensitivityModel, sensitivity_step_response, settling_time,
                                    averaged_feedback_oracle, compare_transient_prediction)
from daglms.daglms_experiments import run_identification
from daglms.daglms_tools import DomainError

def test_identity_closed_form():
    """ Without DAG, the parameter error decays as (1 + g)^-t """

    report = sensitivity_step_response(SensitivityModel(0.05, DagCoefficients()), horizon=200)

    np.testing.assert_allclose(report.step_response, 1.05**(-np.arange(200.)), rtol=1e-10)
    assert report.stable
    assert report.predicted_speedup == pytest.approx(1.)

def test_settling_times():
    """ A DAG at g = 0.01 settles like the plain algorithm at a 10 times larger gain """

    plain = sensitivity_step_response(SensitivityModel(0.01, DagCoefficients()))
    dag = sensitivity_step_response(SensitivityModel(0.01, DagCoefficients.arima2(0.99, 0.,
                                                                                  0.75)))
    fast = sensitivity_step_response(SensitivityModel(0.1, DagCoefficients()))

    assert plain.settling_time == pytest.approx(600, rel=0.2)
    assert dag.settling_time == pytest.approx(70, rel=0.2)
    assert abs(fast.settling_time - dag.settling_time) <= \
           0.25 * max(fast.settling_time, dag.settling_time)
    assert dag.predicted_speedup > 5
    # Documented settling times, default 1e-3 band
    assert (plain.settling_time, dag.settling_time, fast.settling_time) == (695, 59, 73)

def test_settling_order():
    """ At low gain, the settling times follow the steady-state gains """

    times = [sensitivity_step_response(SensitivityModel(0.001, DagCoefficients.preset(name)),
                                       horizon=10000).settling_time
             for name in ['arima2', 'conjugate_gradient', 'ipd', 'ip', 'gradient']]

    assert all(t is not None for t in times)
    assert times == sorted(times)

def test_settling_time():
    """ Test the settling detection """

    assert settling_time(np.array([1., 0.5, 0.01, 0.001]), 0.1) == 2
    assert settling_time(np.array([0.01, 0.001]), 0.1) == 0
    assert settling_time(np.array([1., 0.5, 0.01, 0.2]), 0.1) is None

def test_unstable_and_domain():
    """ Unstable loops are flagged, non-positive gains rejected """

    with pytest.warns(UserWarning):
        # Non minimum phase C: the loop pole (1 + 1.9 g) / (1 + g) is outside the unit circle
        report = sensitivity_step_response(SensitivityModel(0.5, DagCoefficients([-1.9])),
                                           horizon=50)
    assert not report.stable
    assert report.settling_time is None

    with pytest.raises(DomainError):
        SensitivityModel(0., DagCoefficients())

def test_averaged_oracle():
    """ The scalar averaged model follows the sensitivity function step response """

    dag = DagCoefficients.arima2(0.99, 0., 0.75)
    report = sensitivity_step_response(SensitivityModel(0.01, dag), horizon=301)
    vecs = averaged_feedback_oracle(dag, 1., 0.01, 300, return_vectors=True)

    np.testing.assert_allclose(vecs[:, 0], report.step_response, rtol=1e-9, atol=1e-12)

    # Independent directions decay with their own eigenvalues
    cov = np.diag([1., 0.1])
    norms = averaged_feedback_oracle(DagCoefficients(), cov, 0.01, 100, w_init=[1., 0.])
    np.testing.assert_allclose(norms, 1.01**(-np.arange(101.)), rtol=1e-10)

def test_compare_transient_prediction():
    """ The prediction is built on the measured effective gain """

    params = dlms_t.resolve_params({'scenario': 'ident_iir', 'verbose': False, 'horizon': 500,
                                    'algorithm': {'rule': 'plms', 'mu': 0.002},
                                    'dag': {'preset': 'gradient'}})
    series = run_identification(params)
    out = compare_transient_prediction(DagCoefficients(), series)

    assert len(out['measured_wtilde']) == len(out['predicted_wtilde']) == 501
    assert out['measured_wtilde'][0] == out['predicted_wtilde'][0] == 1.
    assert out['g'] > 0
    assert np.all(np.diff(out['predicted_wtilde']) <= 0)
