# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains some global metadata used throughout the daglms code.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

import os

# ---| Some basic parameters |----------------------------------------------------------------------

# Where are we located ?
dlms_dir = os.path.dirname(__file__) # Get the project directory from the file location!

# Name of the parameters files
dlms_params = 'params_daglms.yaml'
dlms_sweep = 'sweep_daglms.yaml'

# Name of default storage spaces
out_env_var = 'DAGLMS_OUT_DIR'
prod_loc = 'daglms_products'

def get_out_dir(out_dir=None):
    ''' Returns the output root: explicit value, else $DAGLMS_OUT_DIR, else ./daglms_products.

    Args:
        out_dir (str, optional): explicit output directory. Defaults to None.

    Returns:
        str: the output directory.
    '''

    if out_dir is not None:
        return out_dir

    return os.environ.get(out_env_var, os.path.join('.', prod_loc))

# ---| Algorithm constants |------------------------------------------------------------------------

nlms_delta = 1e-16           # NLMS regularization
divergence_norm = 1e8        # ||w|| above which a run is declared divergent

# ---| Design constants |---------------------------------------------------------------------------

grid_size = 8192             # frequency points for SPR/PR sweeps and Bode diagrams
contour_grid_size = 1024     # lighter grid used inside the contour bisections
root_threshold = 1 - 1e-12   # modulus below which a root counts as inside the unit circle
boundary_tol = 1e-6          # band around the SPR boundary where verdicts may differ
pr_tol = 1e-9                # tolerance on Re[H_PAA] >= 0
log_gain_nodes = 65536       # quadrature nodes for the log-gain integral

# ---| Analysis constants |-------------------------------------------------------------------------

settle_band = 1e-3           # settling band, as a fraction of the unit initial error
transient_horizon = 2000

# ---| Metrics |------------------------------------------------------------------------------------

csv_fmt = '%.17g'
metric_cols = ['t', 'e_prior', 'e_posterior', 'mse_db', 'd_squared', 'j_eps', 'j_d',
               'attenuation_db']
bode_cols = ['omega_rad', 'mag_db', 'phase_deg', 'real_part']
contour_cols = ['c1', 'c2', 'boundary_id']
transient_cols = ['t', 'wtilde', 'predicted_wtilde']

# ---| Plotting parameters |------------------------------------------------------------------------

plotstyle = os.path.join(dlms_dir, 'mpl_styles', 'daglms_plots.mplstyle')
fig_width = 8.0 # In inches
fig_height = 5.0 # In inches
fig_dpi = 100 # 800x500 px

# ---| PRBS feedback taps (Fibonacci form, maximal length) |----------------------------------------

prbs_taps = {5: (5, 3),
             6: (6, 5),
             7: (7, 6),
             8: (8, 6, 5, 4),
             9: (9, 5),
             10: (10, 7),
             11: (11, 9),
            }

# ---| Named DAG settings, as (c1, c2, d'1) |-------------------------------------------------------

dag_presets = {# Settings with known SPR/PR verdicts
               'gradient': (0., 0., 0.),
               'conjugate_gradient': (0., 0., 0.9),
               'ipd': (1.4, 0.5, 0.),
               'ip': (0.99, 0., 0.),
               'arima2': (0.99, 0., 0.9),
               # Filter identification settings
               'ident_conjugate_gradient': (0., 0., 0.5),
               'ident_ipd': (0., 0.99, 0.),
               'ident_ip': (0.9, 0., 0.),
               'ident_arima2': (0.65, 0., 0.3),
               # Adaptive line enhancer settings
               'ale_set3': (0.99, 0., 0.),
               'ale_set4': (0., 0., 0.9),
               'ale_set5': (-0.5, 0.4, 0.7),
               'ale_set6': (0.99, 0., 0.8),
              }

# ---| Configuration |------------------------------------------------------------------------------

scenarios = ['ale', 'ident_iir', 'ident_fir', 'ident_stochastic', 'anc_synthetic']

# Every allowed key, with its default. Anything else in a user file is an error.
default_params = {
    'scenario': 'ident_iir',
    'verbose': True,
    'multiprocessing': False,
    'svg': False,
    'algorithm': {'rule': None, 'mu': None, 'delta': nlms_delta},
    'dag': {'preset': None, 'c': [], 'd_prime': [], 'approximate': False},
    'filter_length': None,
    'delay': None,
    'horizon': None,
    'noise_snr_db': None,
    'monte_carlo_runs': None,
    'rng_seed': 1,
    'ale': {'sample_rate': 8000.,
            'frequencies': [80., 125., 230., 400.],
            'amplitudes': [0.45, 0.45, 0.45, 0.45],
            'random_phases': True,
            'noise_std': 0.003,
            'noise_pole': 0.9,
            'wav_file': None,
            'mse_window': 100,
            'conv_threshold_db': -40.,
            'mse_sum_horizon': 3200,
           },
    'ident': {'prbs_length': None,
              'prbs_amplitude': 1.,
              'plant': {'numerator': [1., 0.5], 'denominator': [-1.5, 0.7], 'delay': 1,
                        'direct': 0.},
              'd2_init': 4.,
              'decay_ratio': 0.1,
             },
    'anc': {'sample_rate': 2500.,
            'window_seconds': 3.,
            'disturbance': {'noise_std': 1.,
                            'band_center': 120.,
                            'band_q': 1.2,
                            'tone_frequencies': [100., 140.],
                            'tone_amplitude': 0.5,
                           },
            'paths': {'G': {'resonance': [0.95, 200.], 'pole': 0.5, 'numerator': [0.1, 0.05],
                            'denominator': None, 'delay': 2},
                      'M': {'resonance': [0.9, 300.], 'pole': 0.4, 'numerator': [0.05, 0.015],
                            'denominator': None, 'delay': 2},
                      'D': {'resonance': [0.95, 120.], 'pole': 0.5, 'numerator': [0.1, 0.06],
                            'denominator': None, 'delay': 3},
                     },
            'settle_fraction': 0.9,
           },
    }

# Values filled in when the user leaves a key to null
scenario_defaults = {
    'ale': {'algorithm': {'rule': 'nlms', 'mu': 0.02},
            'filter_length': 100, 'delay': 100, 'horizon': 3200, 'monte_carlo_runs': 50},
    'ident_iir': {'algorithm': {'rule': 'plms', 'mu': 0.02},
                  'filter_length': 4, 'delay': 0, 'horizon': 255, 'monte_carlo_runs': 1,
                  'ident': {'prbs_length': 8}},
    'ident_fir': {'algorithm': {'rule': 'plms', 'mu': 0.02},
                  'filter_length': 30, 'delay': 0, 'horizon': 255, 'monte_carlo_runs': 1,
                  'ident': {'prbs_length': 8}},
    'ident_stochastic': {'algorithm': {'rule': 'plms', 'mu': 0.01},
                         'filter_length': 4, 'delay': 0, 'horizon': 512,
                         'monte_carlo_runs': 100, 'noise_snr_db': 33.,
                         'ident': {'prbs_length': 11}},
    'anc_synthetic': {'algorithm': {'rule': 'nlms', 'mu': 0.002},
                      'filter_length': 60, 'delay': 0, 'horizon': 60000, 'monte_carlo_runs': 1},
    }
