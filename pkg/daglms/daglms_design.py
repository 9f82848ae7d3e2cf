# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains the tools to design and verify a DAG: strict positive realness of H_DAG,
positive realness of the parameter adaptation operator H_PAA, frequency responses, admissibility
contours and the steady-state gain.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

import warnings
from functools import partial
from collections import namedtuple

import numpy as np
from scipy import signal, integrate, optimize

from . import daglms_metadata as dlms_m
from . import daglms_tools as dlms_t
from .daglms_core import DagCoefficients
from .daglms_signal import roots_inside
from .daglms_tools import DomainError

SprVerdict = namedtuple('SprVerdict', ['is_spr', 'criterion_verdict', 'sweep_verdict',
                                       'min_real_part', 'argmin_omega'])

# --------------------------------------------------------------------------------------------------
class FrequencyResponse:
    ''' Frequency response of a DAG on a grid of radian frequencies.

    Args:
        omega (ndarray): strictly increasing frequencies, in rad/sample.
        response (ndarray): the complex values H(e^{-i omega}).
    '''

    def __init__(self, omega, response):
        self.omega = np.asarray(omega, dtype=float)
        self.response = np.asarray(response, dtype=complex)

    @property
    def magnitude_db(self):
        return 20 * np.log10(np.abs(self.response))

    @property
    def phase_deg(self):
        return np.degrees(np.angle(self.response))

    @property
    def real_part(self):
        return self.response.real

# --------------------------------------------------------------------------------------------------
def dag_response(dag, omega):
    ''' Evaluates H_DAG = C / D' at some radian frequencies.

    Args:
        dag (DagCoefficients): the DAG.
        omega (ndarray): frequencies, in rad/sample.

    Returns:
        ndarray: the complex response.
    '''

    (_, h) = signal.freqz(dag.numerator, dag.denominator, worN=np.atleast_1d(omega))

    return h

def bode(dag, grid_size=dlms_m.grid_size):
    ''' The Bode diagram of H_DAG on (0, pi].

    Args:
        dag (DagCoefficients): the DAG.
        grid_size (int, optional): number of frequencies. Defaults to 8192.

    Returns:
        FrequencyResponse: the response.
    '''

    omega = np.linspace(0, np.pi, grid_size + 1)[1:]

    return FrequencyResponse(omega, dag_response(dag, omega))

# --------------------------------------------------------------------------------------------------
def arima2_bounds(c2, d1_prime):
    ''' The open interval of c1 for which (c1, c2, d'1) is SPR, ignoring the root conditions.

    Re[C/D'] on the unit circle has the sign of the quadratic
    f(c) = 2 c2 c^2 + (c1 - d'1 (1 + c2)) c + (1 - c2 - c1 d'1), c = cos(omega) in [-1, 1].

    Args:
        c2 (float): the second numerator coefficient.
        d1_prime (float): the denominator coefficient.

    Returns:
        (float, float): the lower and upper bounds on c1.
    '''

    if c2 <= 0:
        return (-1 - c2, 1 + c2)

    s = np.sqrt(2 * (c2 - c2**2) * (1 - d1_prime**2))
    centre = d1_prime - 3 * d1_prime * c2

    # Past these points, the vertex of f leaves [-1, 1] and the end points decide
    upper = centre + 2 * s if s < 2 * c2 * (1 + d1_prime) else 1 + c2
    lower = centre - 2 * s if s < 2 * c2 * (1 - d1_prime) else -1 - c2

    return (lower, upper)

def spr_criterion_arima2(c1, c2, d1_prime):
    ''' Closed-form SPR test of (1 + c1 q^-1 + c2 q^-2) / (1 - d'1 q^-1).

    Args:
        c1 (float): first numerator coefficient.
        c2 (float): second numerator coefficient.
        d1_prime (float): denominator coefficient.

    Returns:
        bool: True if the DAG is strictly positive real.

    .. note:: The denominator must be stable (|d'1| < 1) and the numerator roots inside the unit
              circle; both are checked first and give False when they fail.
    '''

    if not abs(d1_prime) < 1:
        return False

    if not roots_inside([1., c1, c2]):
        return False

    (lower, upper) = arima2_bounds(c2, d1_prime)

    return bool(lower < c1 < upper)

def boundary_distance(c1, c2, d1_prime):
    ''' Distance of a triple to the closest surface where the ARIMA2 SPR verdict flips. '''

    (lower, upper) = arima2_bounds(c2, d1_prime)
    roots = np.roots([1., c1, c2])

    return float(min(abs(c1 - lower), abs(c1 - upper), abs(1 - abs(d1_prime)),
                     abs(1 - np.max(np.abs(roots)))))

# --------------------------------------------------------------------------------------------------
def spr_sweep_oracle(dag, grid_size=dlms_m.grid_size, refine=True, warn=True):
    ''' Numerical SPR test of any DAG, by a dense frequency sweep.

    Args:
        dag (DagCoefficients): the DAG.
        grid_size (int, optional): number of frequencies on [0, pi]. Defaults to 8192.
        refine (bool, optional): polish the grid minimum with a bounded scalar minimization when
            it is close to zero. Defaults to True.
        warn (bool, optional): warn when the closed form and the sweep disagree away from the
            boundary. Defaults to True.

    Returns:
        SprVerdict: the verdicts, with the minimum real part and where it is reached.
    '''

    omega = np.linspace(0, np.pi, grid_size)
    re = dag_response(dag, omega).real

    k = int(np.argmin(re))
    (min_re, argmin) = (float(re[k]), float(omega[k]))

    if refine and min_re < 1e-3:
        res = optimize.minimize_scalar(lambda w: dag_response(dag, w).real[0],
                                       bounds=(omega[max(k - 1, 0)],
                                               omega[min(k + 1, grid_size - 1)]),
                                       method='bounded', options={'xatol': 1e-12})
        if res.fun < min_re:
            (min_re, argmin) = (float(res.fun), float(res.x))

    roots_ok = roots_inside(dag.numerator) and roots_inside(dag.denominator)
    sweep = bool(roots_ok and min_re > 0)

    triple = dag.arima2_triple()
    crit = None if triple is None else spr_criterion_arima2(*triple)

    if warn and crit is not None and crit != sweep and \
       boundary_distance(*triple) > dlms_m.boundary_tol:
        warnings.warn('SPR criterion (%s) and sweep (%s) disagree for %s' %
                      (crit, sweep, dag.describe()))

    return SprVerdict(sweep, crit, sweep, min_re, argmin)

# --------------------------------------------------------------------------------------------------
def _check_triples(triples, grid_size=dlms_m.grid_size):
    ''' Criterion vs oracle on a block of (c1, c2, d'1) triples. Returns the disagreements. '''

    out = []
    for (c1, c2, d1p) in triples:
        crit = spr_criterion_arima2(c1, c2, d1p)
        verdict = spr_sweep_oracle(DagCoefficients.arima2(c1, c2, d1p), grid_size=grid_size,
                                   warn=False)
        if crit != verdict.sweep_verdict and \
           boundary_distance(c1, c2, d1p) > dlms_m.boundary_tol:
            out += [(float(c1), float(c2), float(d1p), crit, verdict.sweep_verdict,
                     verdict.min_real_part)]

    return out

def criterion_agreement(n_triples=10000, seed=0, grid_size=dlms_m.grid_size, nproc=1):
    ''' Compares the closed-form SPR criterion with the sweep oracle on random triples.

    The triples are uniform in [-2, 2] x [-1, 1] x (-1, 1).

    Args:
        n_triples (int, optional): how many triples. Defaults to 10000.
        seed (int, optional): seed of the triple generator. Defaults to 0.
        grid_size (int, optional): oracle grid. Defaults to 8192.
        nproc (int, optional): number of processes. Defaults to 1.

    Returns:
        list: the (c1, c2, d'1, criterion, sweep, min_real_part) disagreements located further than
        1e-6 from the boundary.
    '''

    rng = np.random.default_rng(seed)
    triples = np.column_stack([rng.uniform(-2, 2, n_triples),
                               rng.uniform(-1, 1, n_triples),
                               rng.uniform(-1, 1, n_triples)])

    blocks = np.array_split(triples, max(4 * nproc, 1))
    out = dlms_t.pool_map(partial(_check_triples, grid_size=grid_size), blocks, nproc=nproc,
                          label='SPR agreement sweep')

    return [item for block in out for item in block]

# --------------------------------------------------------------------------------------------------
def paa_real_part(dag, grid_size=dlms_m.grid_size):
    ''' Re[H_PAA] with H_PAA = C / ((1 - q^-1) D'), on (0, pi].

    Returns:
        (ndarray, ndarray): the frequencies and the real parts.
    '''

    omega = np.linspace(0, np.pi, grid_size + 1)[1:]
    (_, h) = signal.freqz(dag.numerator, np.polymul([1., -1.], dag.denominator), worN=omega)

    return (omega, h.real)

def paa_pr_check(dag, grid_size=dlms_m.grid_size, tol=dlms_m.pr_tol):
    ''' Is the parameter adaptation operator H_PAA = C / ((1 - q^-1) D') positive real ?

    Args:
        dag (DagCoefficients): the DAG.
        grid_size (int, optional): number of frequencies on (0, pi]. Defaults to 8192.
        tol (float, optional): tolerance on the sign of the real part. Defaults to 1e-9.

    Returns:
        bool: True if H_PAA is PR.

    .. note:: The pole at z = 1 is handled with the discrete PR definition for marginally stable
              systems: D' stable, C stable or marginally stable, Re[H_PAA] >= 0 on the punctured
              circle and a positive residue C(1) / D'(1) at z = 1.
    '''

    if not roots_inside(dag.denominator):
        return False

    if not roots_inside(dag.numerator, threshold=1 + 1e-12):
        return False

    residue = np.sum(dag.numerator) / np.sum(dag.denominator)
    if not residue > 0:
        return False

    (_, re) = paa_real_part(dag, grid_size)

    return bool(np.min(re) >= -tol)

# --------------------------------------------------------------------------------------------------
def log_gain_integral(dag, n_nodes=dlms_m.log_gain_nodes):
    ''' Integral of log|C / D'| over [0, pi].

    For a DAG whose numerator and denominator have all their roots inside the unit circle, this
    integral is zero.

    Args:
        dag (DagCoefficients): the DAG.
        n_nodes (int, optional): number of quadrature nodes. Defaults to 65536.

    Returns:
        float: the integral.

    Raises:
        DomainError: if a root of C or D' is not strictly inside the unit circle.
    '''

    if not (roots_inside(dag.numerator) and roots_inside(dag.denominator)):
        raise DomainError('log-gain integral needs all the roots of C and D\' inside the unit '
                          'circle: %s' % dag.describe())

    omega = np.linspace(0, np.pi, n_nodes)

    # The integrand is smooth and periodic: the trapezoidal rule converges spectrally
    return float(integrate.trapezoid(np.log(np.abs(dag_response(dag, omega))), omega))

# --------------------------------------------------------------------------------------------------
def steady_state_gain(dag):
    ''' SSG = (1 + sum c_j) / (1 - sum d'_j).

    Raises:
        DomainError: if sum d'_j = 1.
    '''

    den = 1. - np.sum(dag.d_prime)
    if np.isclose(den, 0., rtol=0, atol=1e-14):
        raise DomainError('Steady-state gain undefined: sum of d\' equals 1 for %s' %
                          dag.describe())

    return float((1. + np.sum(dag.c)) / den)

# --------------------------------------------------------------------------------------------------
def _bisect(func, lo, hi, n_iter=25):
    ''' Locates the flip of a boolean function between lo and hi (func(lo) != func(hi)). '''

    f_lo = func(lo)
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        if func(mid) == f_lo:
            lo = mid
        else:
            hi = mid

    return 0.5 * (lo + hi)

def contour_trace(d1_prime, resolution=41, c1_range=(-2.5, 2.5), c2_range=(-1.2, 1.2),
                  grid_size=dlms_m.contour_grid_size):
    ''' Traces, in the c1-c2 plane, the SPR boundary of H_DAG and the PR boundary of H_PAA.

    Both verdicts are evaluated on a resolution x resolution grid with the sweep oracles; every
    verdict flip between neighbouring grid points, along rows and columns, is then located by
    bisection.

    Args:
        d1_prime (float): the (fixed) denominator coefficient.
        resolution (int, optional): number of grid points along each axis. Defaults to 41.
        c1_range (tuple, optional): the c1 extent. Defaults to (-2.5, 2.5).
        c2_range (tuple, optional): the c2 extent. Defaults to (-1.2, 1.2).
        grid_size (int, optional): frequency grid of the oracles. Defaults to 1024.

    Returns:
        list: (c1, c2, boundary_id) points, boundary_id being 'spr' or 'paa_pr', each boundary
        ordered by angle around its centre so that it can be drawn as a polyline.
    '''

    if not abs(d1_prime) < 1:
        raise DomainError('Contours need |d\'1| < 1, not: %s' % d1_prime)

    def is_spr(c1, c2):
        return spr_sweep_oracle(DagCoefficients.arima2(c1, c2, d1_prime), grid_size=grid_size,
                                refine=False, warn=False).sweep_verdict

    def is_pr(c1, c2):
        return paa_pr_check(DagCoefficients.arima2(c1, c2, d1_prime), grid_size=grid_size)

    c1s = np.linspace(c1_range[0], c1_range[1], resolution)
    c2s = np.linspace(c2_range[0], c2_range[1], resolution)

    out = []
    for (name, func) in [('spr', is_spr), ('paa_pr', is_pr)]:
        mask = np.array([[func(c1, c2) for c1 in c1s] for c2 in c2s])
        pts = []

        # Along the rows (c2 fixed), then along the columns (c1 fixed)
        for (j, c2) in enumerate(c2s):
            for i in np.nonzero(mask[j, 1:] != mask[j, :-1])[0]:
                pts += [(_bisect(lambda c, c2=c2: func(c, c2), c1s[i], c1s[i + 1]), c2)]

        for (i, c1) in enumerate(c1s):
            for j in np.nonzero(mask[1:, i] != mask[:-1, i])[0]:
                pts += [(c1, _bisect(lambda c, c1=c1: func(c1, c), c2s[j], c2s[j + 1]))]

        if not pts:
            continue

        pts = np.array(pts)
        centre = pts.mean(axis=0)
        order = np.argsort(np.arctan2(pts[:, 1] - centre[1], pts[:, 0] - centre[0]))
        out += [(float(c1), float(c2), name) for (c1, c2) in pts[order]]

    return out
