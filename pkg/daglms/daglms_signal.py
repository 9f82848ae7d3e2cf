# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains the signal generators, the plant models and the sample ingestion tools used
by the daglms experiments.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

import os
import numpy as np
from scipy import signal
from scipy.io import wavfile

from . import daglms_metadata as dlms_m
from .daglms_tools import ConfigError, IngestionError

# --------------------------------------------------------------------------------------------------
class PrbsGenerator:
    ''' Maximal-length shift register producing a pseudo random binary sequence.

    Args:
        register_length (int, optional): number of bits in the register. Defaults to 8.
        seed (int, optional): initial register content, as an integer bit pattern. Defaults to
            all ones.
        amplitude (float, optional): output level, the sequence takes values in
            {-amplitude, +amplitude}. Defaults to 1.

    .. note:: The register is a Fibonacci LFSR: the output is the lowest bit, the feedback is
              the XOR of the tapped bits and enters at the top. The sequence has a period of
              2**register_length - 1.
    '''

    def __init__(self, register_length=8, seed=None, amplitude=1.):

        if register_length not in dlms_m.prbs_taps:
            raise ConfigError('Unsupported PRBS register length: %s. Valid: %s' %
                              (register_length, sorted(dlms_m.prbs_taps)))

        self.register_length = register_length
        self.amplitude = float(amplitude)

        mask = (1 << register_length) - 1
        if seed is None:
            seed = mask
        if not 0 < seed <= mask:
            raise ConfigError('PRBS seed must be a non-zero %i-bit pattern, not: %s' %
                              (register_length, seed))

        self.seed = seed
        self.state = seed
        self._shifts = [register_length - tap for tap in dlms_m.prbs_taps[register_length]]

    @property
    def period(self):
        ''' The period of the sequence, in samples. '''
        return (1 << self.register_length) - 1

    def next_sample(self):
        ''' Returns the next sample and advances the register. '''

        bit = self.state & 1

        fb = 0
        for shift in self._shifts:
            fb ^= (self.state >> shift) & 1

        self.state = (self.state >> 1) | (fb << (self.register_length - 1))

        return self.amplitude if bit else -self.amplitude

    def generate(self, n_samples):
        ''' Returns the next n_samples samples as an array. '''
        return np.array([self.next_sample() for _ in range(n_samples)])

    def reset(self):
        ''' Puts the register back to its seed. '''
        self.state = self.seed

def prbs_next(gen):
    ''' Returns the next sample of a PrbsGenerator. '''
    return gen.next_sample()

# --------------------------------------------------------------------------------------------------
def roots_inside(poly, threshold=dlms_m.root_threshold):
    ''' Checks whether all the roots of a polynomial in q^-1 are inside the unit circle.

    Args:
        poly (list): coefficients [1, p1, p2, ...] of 1 + p1 q^-1 + p2 q^-2 + ...
        threshold (float, optional): largest admissible modulus.

    Returns:
        bool: True if all the roots have a modulus below the threshold.
    '''

    poly = np.trim_zeros(np.atleast_1d(np.asarray(poly, dtype=float)), 'b')
    if len(poly) <= 1:
        return True

    # np.roots uses the eigenvalues of the companion matrix
    return bool(np.all(np.abs(np.roots(poly)) < threshold))

# --------------------------------------------------------------------------------------------------
class PlantModel:
    ''' Rational transfer operator q^-d B(q^-1) / A(q^-1).

    The output obeys y(t) = -sum_i a_i y(t-i) + b_0 u(t-d) + sum_j b_j u(t-d-j).

    Args:
        numerator (list): b_1, ..., b_nB.
        denominator (list): a_1, ..., a_nA (the leading 1 is implied).
        delay (int, optional): pure delay d in samples. Defaults to 0.
        direct (float, optional): b_0, the coefficient of u(t-d). Defaults to 0.
        check_stability (bool, optional): raise if the denominator has roots on or outside the
            unit circle. Defaults to True.
    '''

    def __init__(self, numerator, denominator=(), delay=0, direct=0., check_stability=True):

        try:
            self.numerator = np.array(numerator if numerator is not None else [], dtype=float)
            self.denominator = np.array(denominator if denominator is not None else [],
                                        dtype=float)
            self.direct = float(direct)
        except (TypeError, ValueError) as err:
            raise ConfigError('Invalid plant coefficients: %s' % err) from err

        if not isinstance(delay, (int, np.integer)) or delay < 0:
            raise ConfigError('Plant delay must be a non-negative integer, not: %s' % delay)
        self.delay = int(delay)

        if check_stability and not roots_inside(self.a):
            raise ConfigError('Unstable plant: denominator roots %s' % np.roots(self.a))

    @property
    def a(self):
        ''' Full denominator [1, a_1, ..., a_nA]. '''
        return np.concatenate([[1.], self.denominator])

    @property
    def b(self):
        ''' Full numerator in powers of q^-1, delay included. '''
        return np.concatenate([np.zeros(self.delay), [self.direct], self.numerator])

    @property
    def order(self):
        ''' The order n = max(n_A, n_B + d). '''
        return max(len(self.denominator), len(self.numerator) + self.delay)

    def impulse_response(self, n_samples):
        ''' The first n_samples of the impulse response. '''
        imp = np.zeros(n_samples)
        imp[0] = 1.
        return simulate_plant(self, imp)

    def streamer(self):
        ''' Returns a StreamingFilter running this plant sample by sample. '''
        return StreamingFilter(self.b, self.a)

    @classmethod
    def resonant(cls, resonance, pole, numerator, delay, fs):
        ''' Builds a 4th-order lowpass-with-resonance path.

        The denominator is (1 - 2 r cos(theta) q^-1 + r^2 q^-2) (1 - p q^-1)^2.

        Args:
            resonance (list): [r, f], pole radius and frequency (Hz) of the resonance.
            pole (float): the real double pole p.
            numerator (list): b_1, ..., b_nB.
            delay (int): pure delay.
            fs (float): sampling frequency (Hz).

        Returns:
            PlantModel: the path.
        '''

        (radius, freq) = resonance
        theta = 2 * np.pi * freq / fs
        den = np.polymul([1., -2 * radius * np.cos(theta), radius**2],
                         np.polymul([1., -pole], [1., -pole]))

        return cls(numerator, den[1:], delay=delay)

def simulate_plant(model, u):
    ''' Runs a PlantModel on an input sequence, from zero initial conditions.

    Args:
        model (PlantModel): the plant.
        u (ndarray): the input samples.

    Returns:
        ndarray: the output samples.
    '''

    return signal.lfilter(model.b, model.a, np.asarray(u, dtype=float))

# --------------------------------------------------------------------------------------------------
class StreamingFilter:
    ''' Direct-form I IIR filter working one sample at a time.

    Args:
        b (list): numerator [b_0, b_1, ...].
        a (list): denominator [1, a_1, ...].

    .. note:: x_hist holds x(t-1), x(t-2), ... and y_hist y(t-1), y(t-2), ... peek() returns
              the output of the next step minus its direct term b_0 u(t), which is the full output
              for strictly proper filters: it lets a feedback loop read a path before feeding it.
    '''

    def __init__(self, b, a=(1.,)):

        self.b = np.asarray(b, dtype=float)
        self.a = np.asarray(a, dtype=float)

        if self.a[0] != 1:
            self.b = self.b / self.a[0]
            self.a = self.a / self.a[0]

        self.x_hist = np.zeros(max(len(self.b) - 1, 0))
        self.y_hist = np.zeros(max(len(self.a) - 1, 0))

    def peek(self):
        ''' Output of the next step, without the direct term. '''
        return float(self.b[1:] @ self.x_hist - self.a[1:] @ self.y_hist)

    def step(self, x):
        ''' Feeds one sample in, returns one sample out. '''

        y = self.b[0] * x + self.peek()

        if len(self.x_hist):
            self.x_hist[1:] = self.x_hist[:-1]
            self.x_hist[0] = x
        if len(self.y_hist):
            self.y_hist[1:] = self.y_hist[:-1]
            self.y_hist[0] = y

        return y

    def reset(self):
        ''' Zeroes the filter state. '''
        self.x_hist[:] = 0
        self.y_hist[:] = 0

# --------------------------------------------------------------------------------------------------
def read_pcm_wav(fn):
    ''' Reads a mono 16-bit PCM WAV file.

    Args:
        fn (str): the file name.

    Returns:
        (ndarray, float): the samples scaled to [-1, 1) and the sampling rate.

    Raises:
        IngestionError: for missing files, malformed headers, non-mono or non-16-bit data.
    '''

    if not os.path.isfile(fn):
        raise IngestionError('WAV file not found: %s' % (fn))

    try:
        (fs, data) = wavfile.read(fn)
    except (ValueError, EOFError) as err:
        raise IngestionError('Malformed WAV file %s: %s' % (fn, err)) from err

    if data.dtype != np.int16:
        raise IngestionError('Only 16-bit PCM is supported, got %s in %s' % (data.dtype, fn))

    if data.ndim != 1:
        raise IngestionError('Only mono files are supported, got %i channels in %s' %
                             (data.shape[1], fn))

    return data / 32768., float(fs)

# --------------------------------------------------------------------------------------------------
signal_kinds = ['prbs', 'multisine', 'gaussian_noise', 'pink_noise', 'file', 'sum']

def generate(sig, seed=0):
    ''' Generates a signal from its description.

    Args:
        sig (dict): the signal description. Mandatory keys: 'kind' (one of 'prbs',
            'multisine', 'gaussian_noise', 'pink_noise', 'file', 'sum'), 'sample_rate' (Hz) and
            'length' (samples). Other keys depend on the kind:

            - prbs: 'register_length', 'amplitude', 'seed' (bit pattern)
            - multisine: 'frequencies' (Hz), 'amplitudes', 'phases' (rad)
            - gaussian_noise: 'std'
            - pink_noise: 'std', 'pole'
            - file: 'path'
            - sum: 'components' (list of signal descriptions, sample_rate and length are
              inherited)

        seed (int|list, optional): seed of the noise generators, used when sig has no 'seed'
            of its own. Defaults to 0.

    Returns:
        ndarray: the samples.
    '''

    if sig.get('kind') not in signal_kinds:
        raise ConfigError('Unknown signal kind: %s' % sig.get('kind'))

    n = int(sig['length'])
    fs = float(sig['sample_rate'])
    kind = sig['kind']

    if kind == 'prbs':
        gen = PrbsGenerator(sig.get('register_length', 8), sig.get('seed'),
                            sig.get('amplitude', 1.))
        return gen.generate(n)

    if kind == 'multisine':
        freqs = np.atleast_1d(np.asarray(sig['frequencies'], dtype=float))
        amps = np.broadcast_to(np.asarray(sig.get('amplitudes', 1.), dtype=float), freqs.shape)
        phases = np.broadcast_to(np.asarray(sig.get('phases', 0.), dtype=float), freqs.shape)

        if np.any(freqs >= fs / 2):
            raise ConfigError('Multisine frequencies must stay below fs/2 = %.1f Hz' % (fs / 2))

        t = np.arange(n) / fs
        return np.sum(amps[:, None] * np.sin(2 * np.pi * freqs[:, None] * t[None, :] +
                                             phases[:, None]), axis=0)

    rng = np.random.default_rng(sig.get('seed', seed))

    if kind == 'gaussian_noise':
        return sig.get('std', 1.) * rng.standard_normal(n)

    if kind == 'pink_noise':
        pole = sig.get('pole', 0.9)
        if not -1 < pole < 1:
            raise ConfigError('Pink noise pole must be inside (-1, 1), not: %s' % pole)
        # Unit-variance AR(1)
        white = rng.standard_normal(n)
        return sig.get('std', 1.) * signal.lfilter([np.sqrt(1 - pole**2)], [1., -pole], white)

    if kind == 'file':
        (data, file_fs) = read_pcm_wav(sig['path'])
        if file_fs != fs:
            raise IngestionError('Sample rate mismatch: %s is at %.1f Hz, expected %.1f Hz' %
                                 (sig['path'], file_fs, fs))
        if len(data) < n:
            raise IngestionError('File too short: %s has %i samples, %i required' %
                                 (sig['path'], len(data), n))
        return data[:n]

    # Sum: the components inherit the rate and length
    out = np.zeros(n)
    for comp in sig['components']:
        comp = dict(comp, sample_rate=fs, length=n)
        out += generate(comp, seed=seed)

    return out
