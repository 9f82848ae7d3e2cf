# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file specifies the kind of functions that are made directly available to the user.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

from .daglms import run, sweep, design, transient
from .daglms_core import (DagCoefficients, StepSizeRule, dag_presets, momentum_dag, run_filter,
                          update)
from .daglms_tools import (DaglmsError, ConfigError, DivergenceError, IngestionError, DomainError,
                           NumericError)
from .daglms_version import __version__ # Gives users easy access to the version
