#
# SDCD - streaming delay change detection for public transport.
#
# Copyright (C) 2022-2023 by SDCD team
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.
#

"""
KSWIN change detector.

The detector keeps sliding window of recent values. When the window is
full, the older part of the window is compared with the block of most
recent values using Kolmogorov-Smirnov statistic. On detected change the
window is truncated to the block of most recent values.
"""

import logging
from collections import deque

import numpy as np

from sdcd.component import inject
from . import ChangeDetector
from .stats import ks_statistic, ks_threshold

log = logging.getLogger('sdcd.detector.kswin')


@inject(ChangeDetector, kind='kswin')
class KSWIN(ChangeDetector):
    """
    KSWIN change detector.

    :Attributes:
     window
        Sliding window of values.
     threshold
        Kolmogorov-Smirnov statistic value, above which change is
        detected.
    """
    kind = 'kswin'

    def __init__(self, config):
        super().__init__(config)
        self.size = config.kswin_window
        self.stat_size = config.kswin_stat
        self.window = deque(maxlen=self.size)
        self.threshold = ks_threshold(config.confidence,
            self.size - self.stat_size, self.stat_size)


    def _add(self, value):
        self.window.append(value)
        if len(self.window) < self.size:
            return None

        values = np.fromiter(self.window, dtype=float, count=self.size)
        older = values[:-self.stat_size]
        recent = values[-self.stat_size:]
        stat = ks_statistic(older, recent)
        if stat <= self.threshold:
            return None

        log.debug('kswin change, statistic {:.3f} > {:.3f}'.format(
            stat, self.threshold))
        self.window = deque(recent, maxlen=self.size)
        return float(older.mean()), float(recent.mean())


# vim: sw=4:et:ai
