# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains test functions related to daglms_signal.py

Created October 2026, the daglms developers
'''

# Import from python
import numpy as np
import pytest
from scipy import signal
from scipy.io import wavfile

# Import from daglms
from daglms import daglms_metadata as dlms_m
from daglms.daglms_signal import (PrbsGenerator, PlantModel, StreamingFilter, simulate_plant,
                                  roots_inside, read_pcm_wav, generate)
from daglms.daglms_tools import ConfigError, IngestionError

def test_prbs_maximal_length():
    """ Every register length visits all its non-zero states once per period """

    for n_bits in [5, 6, 7, 8, 9, 10, 11]:
        gen = PrbsGenerator(n_bits)
        states = set()
        for _ in range(gen.period):
            states.add(gen.state)
            gen.next_sample()

        assert len(states) == 2**n_bits - 1
        assert gen.state == gen.seed

def test_prbs_sequence():
    """ Test the PRBS values, periodicity and balance """

    gen = PrbsGenerator(8, amplitude=2.)
    seq = gen.generate(2 * 255)

    assert set(np.unique(seq)) == {-2., 2.}
    np.testing.assert_array_equal(seq[:255], seq[255:])
    assert abs(np.sum(seq[:255])) == 2.

    gen.reset()
    np.testing.assert_array_equal(gen.generate(10), seq[:10])

def test_prbs_autocorrelation():
    """ The periodic autocorrelation is N A^2 at lag 0 and -A^2 at every other lag """

    for (n_bits, amplitude) in [(5, 1.), (8, 2.), (10, 0.5)]:
        gen = PrbsGenerator(n_bits, amplitude=amplitude)
        seq = gen.generate(gen.period)
        acf = np.array([seq @ np.roll(seq, lag) for lag in range(gen.period)])

        assert acf[0] == pytest.approx(gen.period * amplitude**2)
        np.testing.assert_allclose(acf[1:], -amplitude**2, rtol=0, atol=1e-9)

def test_prbs_errors():
    """ Unsupported lengths and seeds are configuration errors """

    with pytest.raises(ConfigError):
        PrbsGenerator(4)
    with pytest.raises(ConfigError):
        PrbsGenerator(8, seed=0)
    with pytest.raises(ConfigError):
        PrbsGenerator(8, seed=256)

def test_plant_model():
    """ Test the impulse response of y(t) = 1.5 y(t-1) - 0.7 y(t-2) + u(t-2) + 0.5 u(t-3) """

    plant = PlantModel([1., 0.5], [-1.5, 0.7], delay=1)
    imp = plant.impulse_response(5)

    np.testing.assert_allclose(imp, [0., 0., 1., 2., 2.3], atol=1e-14)
    assert plant.order == 3
    np.testing.assert_array_equal(plant.b, [0., 0., 1., 0.5])

    with pytest.raises(ConfigError):
        PlantModel([1.], [-2.])
    with pytest.raises(ConfigError):
        PlantModel([1.], delay=-1)

def test_resonant_plant():
    """ The resonant paths are stable 4th order filters """

    plant = PlantModel.resonant([0.95, 200.], 0.5, [0.1, 0.05], 2, 2500.)

    assert len(plant.denominator) == 4
    assert roots_inside(plant.a)
    assert np.max(np.abs(np.roots(plant.a))) == pytest.approx(0.95)

def test_streaming_filter():
    """ The sample-by-sample filter matches lfilter """

    rng = np.random.default_rng(3)
    u = rng.standard_normal(200)
    (b, a) = ([0.3, -0.2, 0.1], [1., -0.5, 0.2])

    filt = StreamingFilter(b, a)
    out = np.array([filt.step(val) for val in u])

    np.testing.assert_allclose(out, signal.lfilter(b, a, u), rtol=1e-12, atol=1e-14)

    plant = PlantModel([0.5, 0.25], [-0.6], delay=1)
    filt = plant.streamer()
    for val in u[:50]:
        peeked = filt.peek()
        assert filt.step(val) == pytest.approx(peeked, abs=1e-15)

    np.testing.assert_allclose(simulate_plant(plant, u[:50]),
                               signal.lfilter(plant.b, plant.a, u[:50]))

    filt.reset()
    assert filt.peek() == 0

def test_simulate_plant_linearity():
    """ The plant output is linear in its input """

    rng = np.random.default_rng(4)
    (u1, u2) = rng.standard_normal((2, 300))
    plant = PlantModel([1., 0.5], [-1.5, 0.7], delay=1)

    np.testing.assert_allclose(simulate_plant(plant, 2. * u1 - 0.3 * u2),
                               2. * simulate_plant(plant, u1) - 0.3 * simulate_plant(plant, u2),
                               rtol=1e-10, atol=1e-10)
    np.testing.assert_array_equal(simulate_plant(plant, np.zeros(20)), 0.)

def test_multisine_spectrum():
    """ The line enhancer input has exactly its four spectral lines """

    ale = dlms_m.default_params['ale']
    rng = np.random.default_rng(2)
    sines = generate({'kind': 'multisine', 'sample_rate': ale['sample_rate'], 'length': 8000,
                      'frequencies': ale['frequencies'], 'amplitudes': ale['amplitudes'],
                      'phases': rng.uniform(0, 2 * np.pi, 4)})

    # 1 Hz bins
    spec = np.abs(np.fft.rfft(sines))
    lines = np.sort(np.argsort(spec)[-4:])

    assert lines.tolist() == [80, 125, 230, 400]
    np.testing.assert_allclose(spec[lines], 0.45 * 8000 / 2, rtol=1e-6)
    assert np.max(np.delete(spec, lines)) < 1e-6 * np.max(spec)

def test_generate():
    """ Test the signal kinds """

    sines = generate({'kind': 'multisine', 'sample_rate': 8000., 'length': 8000,
                      'frequencies': [100.], 'amplitudes': [2.]})
    assert np.max(np.abs(sines)) == pytest.approx(2., rel=1e-6)

    with pytest.raises(ConfigError):
        generate({'kind': 'multisine', 'sample_rate': 8000., 'length': 10,
                  'frequencies': [4000.]})
    with pytest.raises(ConfigError):
        generate({'kind': 'chirp', 'sample_rate': 8000., 'length': 10})

    pink = generate({'kind': 'pink_noise', 'sample_rate': 8000., 'length': 200000, 'std': 0.5,
                     'pole': 0.9}, seed=1)
    assert np.std(pink) == pytest.approx(0.5, rel=0.05)

    sig = {'kind': 'sum', 'sample_rate': 8000., 'length': 500,
           'components': [{'kind': 'gaussian_noise', 'std': 1.},
                          {'kind': 'prbs', 'register_length': 5}]}
    np.testing.assert_array_equal(generate(sig, seed=[1, 2]), generate(sig, seed=[1, 2]))
    assert not np.array_equal(generate(sig, seed=[1, 2]), generate(sig, seed=[1, 3]))

def test_wav_files(tmp_path):
    """ Test the ingestion of PCM files """

    data = (np.arange(-100, 100) * 100).astype(np.int16)
    fn = str(tmp_path / 'mono.wav')
    wavfile.write(fn, 8000, data)

    (vals, fs) = read_pcm_wav(fn)
    assert fs == 8000.
    np.testing.assert_array_equal(vals, data / 32768.)

    out = generate({'kind': 'file', 'path': fn, 'sample_rate': 8000., 'length': 150})
    assert len(out) == 150

    with pytest.raises(IngestionError):
        generate({'kind': 'file', 'path': fn, 'sample_rate': 8000., 'length': 300})
    with pytest.raises(IngestionError):
        generate({'kind': 'file', 'path': fn, 'sample_rate': 16000., 'length': 10})
    with pytest.raises(IngestionError):
        read_pcm_wav(str(tmp_path / 'missing.wav'))

    stereo = str(tmp_path / 'stereo.wav')
    wavfile.write(stereo, 8000, np.zeros((10, 2), dtype=np.int16))
    with pytest.raises(IngestionError):
        read_pcm_wav(stereo)

    floats = str(tmp_path / 'float.wav')
    wavfile.write(floats, 8000, np.zeros(10, dtype=np.float32))
    with pytest.raises(IngestionError):
        read_pcm_wav(floats)

    garbage = tmp_path / 'garbage.wav'
    garbage.write_bytes(b'not a wav file at all')
    with pytest.raises(IngestionError):
        read_pcm_wav(str(garbage))
