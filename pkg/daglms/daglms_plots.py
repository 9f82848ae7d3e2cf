# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains the routines creating the daglms SVG figures.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

import numpy as np

import matplotlib.pyplot as plt
import matplotlib.gridspec as gridspec

from . import daglms_metadata as dlms_m

# Set the proper plotting style
plt.style.use(dlms_m.plotstyle)

# --------------------------------------------------------------------------------------------------
def _new_figure(nrows=1):
    ''' Starts an 8x5 inch figure with nrows stacked axes sharing their x-axis. '''

    plt.close(1)
    fig = plt.figure(1, figsize=(dlms_m.fig_width, dlms_m.fig_height), dpi=dlms_m.fig_dpi)
    gs = gridspec.GridSpec(nrows, 1, figure=fig)
    gs.update(left=0.11, right=0.96, bottom=0.11, top=0.94, hspace=0.08)

    axs = [fig.add_subplot(gs[0, 0])]
    for row in range(1, nrows):
        axs += [fig.add_subplot(gs[row, 0], sharex=axs[0])]
    for ax in axs[:-1]:
        ax.tick_params(labelbottom=False)

    return (fig, axs)

def _save(fig, ofn):
    fig.savefig(ofn, format='svg')
    plt.close(fig)
    return ofn

# --------------------------------------------------------------------------------------------------
def plot_metrics(series, ofn, title=None):
    ''' Plots the evolution of a MetricSeries.

    The top panel shows the MSE, the bottom one D^2(t) for identification runs, or the
    attenuation for noise control runs. Panels without data are left out.

    Args:
        series (MetricSeries): the metrics.
        ofn (str): path+name of the SVG file.
        title (str, optional): the figure title.

    Returns:
        str: the filename.
    '''

    extra = [(vals, label) for (vals, label) in
             [(series.d_squared, r'$D^2(t)$'), (series.attenuation_db, 'Attenuation [dB]')]
             if np.any(np.isfinite(vals))]

    (fig, axs) = _new_figure(1 + len(extra))

    with np.errstate(divide='ignore'):
        axs[0].plot(series.t, series.mse_db, 'k-')
    axs[0].set_ylabel('MSE [dB]')

    for (ax, (vals, label)) in zip(axs[1:], extra):
        ax.plot(series.t, vals, '-', c='firebrick')
        ax.set_ylabel(label)
        if label.startswith('$D'):
            ax.set_yscale('log')

    axs[-1].set_xlabel('Sample')
    axs[-1].set_xlim((series.t[0], series.t[-1]))

    if title is not None:
        axs[0].set_title(title)

    return _save(fig, ofn)

def plot_bode(response, ofn, title=None):
    ''' Plots the magnitude and phase of a DAG frequency response.

    Args:
        response (FrequencyResponse): the response.
        ofn (str): path+name of the SVG file.
        title (str, optional): the figure title.

    Returns:
        str: the filename.
    '''

    (fig, axs) = _new_figure(2)

    axs[0].semilogx(response.omega, response.magnitude_db, 'k-')
    axs[0].set_ylabel('Magnitude [dB]')

    axs[1].semilogx(response.omega, response.phase_deg, 'k-')
    axs[1].axhline(90, ls='--', c='firebrick')
    axs[1].axhline(-90, ls='--', c='firebrick')
    axs[1].set_ylabel('Phase [deg]')
    axs[1].set_xlabel(r'$\omega$ [rad/sample]')

    if title is not None:
        axs[0].set_title(title)

    return _save(fig, ofn)

def plot_contours(points, d1_prime, ofn):
    ''' Plots the SPR and PR boundaries of the ARIMA2 DAG in the (c1, c2) plane.

    Args:
        points (list): (c1, c2, kind) boundary points, as returned by contour_trace().
        d1_prime (float): the value of d'1 of the slice.
        ofn (str): path+name of the SVG file.

    Returns:
        str: the filename.
    '''

    (fig, axs) = _new_figure(1)
    ax = axs[0]

    styles = {'spr': ('k-', r'$H_{DAG}$ SPR'), 'paa_pr': ('--', r'$H_{PAA}$ PR')}
    for (kind, (fmt, label)) in styles.items():
        pts = np.array([(c1, c2) for (c1, c2, this) in points if this == kind])
        if len(pts):
            # Close the contour
            pts = np.vstack([pts, pts[:1]])
            ax.plot(pts[:, 0], pts[:, 1], fmt, label=label)

    ax.set_xlabel('$c_1$')
    ax.set_ylabel('$c_2$')
    ax.set_title("$d'_1$ = %g" % d1_prime)
    ax.legend(loc='upper right')

    return _save(fig, ofn)

def plot_transient(curves, ofn, band=None):
    ''' Plots parameter error transients.

    Args:
        curves (dict): label -> (t, w~(t)).
        ofn (str): path+name of the SVG file.
        band (float, optional): the settling band, drawn as dotted lines. Defaults to None.

    Returns:
        str: the filename.
    '''

    (fig, axs) = _new_figure(1)
    ax = axs[0]

    for (label, (t, vals)) in curves.items():
        ax.plot(t, vals, '-', label=label)

    if band is not None:
        ax.axhline(band, ls=':', c='grey')
        ax.axhline(-band, ls=':', c='grey')

    ax.set_xlabel('Sample')
    ax.set_ylabel(r'$\tilde{w}(t)$')
    ax.legend(loc='upper right')

    return _save(fig, ofn)
