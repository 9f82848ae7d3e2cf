# -*- coding: utf-8 -*-
'''
daglms: variable step-size LMS adaptation with a dynamic adaptation gain.\n
Copyright (C) 2026, the daglms developers.

Distributed under the terms of the GNU General Public License v3.0 or later.

SPDX-License-Identifier: GPL-3.0-or-later

This file contains the version of the code.

Created October 2026, the daglms developers
'''
# --------------------------------------------------------------------------------------------------

__version__ = '2026.10.0'
