# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

Created October 2026, the daglms developers
'''

import os
from setuptools import setup # Always prefer setuptools over distutils

# Run the version file
with open(os.path.join('.', 'daglms', 'daglms_version.py')) as v:
    version = [l.split("'")[1] for l in v.readlines() if '__version__' in l][0]

with open('README') as f:
    long_description = f.read()

setup(
    name='daglms',
    version=version,
    author='the daglms developers',
    packages=['daglms',],
    license='GNU General Public License',
    description='Variable step-size LMS adaptation with a dynamic adaptation gain.',
    long_description=long_description,
    python_requires='>=3.8',
    install_requires=[
        "numpy >= 1.20",
        "scipy >= 1.6.0",
        "matplotlib >= 3.3.0",
        "PyYAML >=5.1"],
    extras_require={'test': ['pytest']},

    entry_points={'console_scripts': ['daglms=daglms.__main__:main']},

    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
        'License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)',
        'Programming Language :: Python :: 3',
        ],

    include_package_data=True, # So that non .py files make it onto pypi, and then back !
    package_data={'daglms': ['exec_scripts/*.yaml', 'mpl_styles/*.mplstyle']},
)
