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
HDDM_A change detector.

The detector compares the mean of all values since the last change with
the mean of values up to a cut point using Hoeffding bound. Two cut points
are tracked, one for an increase and one for a decrease of the mean.

Hoeffding bound applies to values from range [0, 1], therefore the means
are normalized with running minimum and maximum of values at the time of
a test.
"""

import logging
import math

from sdcd.component import inject
from . import ChangeDetector
from .stats import hoeffding_bound

log = logging.getLogger('sdcd.detector.hddm')


def mean_shift(n_cut, total_n, confidence):
    """
    Calculate bound of difference between mean of all values and mean
    of values up to a cut point.

    :Parameters:
     n_cut
        Number of values up to the cut point.
     total_n
        Number of all values.
     confidence
        Drift confidence.
    """
    m = (total_n - n_cut) / n_cut / total_n
    return math.sqrt(m / 2 * math.log(2 / confidence))


@inject(ChangeDetector, kind='hddm')
class HDDM_A(ChangeDetector):
    """
    HDDM_A change detector.

    :Attributes:
     total_n
        Number of values since last change.
     total_s
        Sum of values since last change.
     n_min, s_min
        Number and sum of values up to cut point of the mean increase test.
     n_max, s_max
        Number and sum of values up to cut point of the mean decrease test.
     lo, hi
        Running minimum and maximum of all values.
    """
    kind = 'hddm'

    def __init__(self, config):
        super().__init__(config)
        self.confidence = config.confidence
        self.lo = math.inf
        self.hi = -math.inf
        self._reset()


    def _reset(self):
        self.total_n = 0
        self.total_s = 0.0
        self.n_min = self.n_max = 0
        self.s_min = self.s_max = 0.0


    def _norm(self, s, n):
        span = self.hi - self.lo
        return (s / n - self.lo) / span if span > 0 else 0.0


    def _add(self, value):
        self.lo = min(self.lo, value)
        self.hi = max(self.hi, value)
        self.total_n += 1
        self.total_s += value
        if self.n_min == 0:
            self.n_min, self.s_min = self.total_n, self.total_s
        if self.n_max == 0:
            self.n_max, self.s_max = self.total_n, self.total_s

        conf = self.confidence
        mean = self._norm(self.total_s, self.total_n)
        eps = hoeffding_bound(self.total_n, conf)

        mean_min = self._norm(self.s_min, self.n_min)
        if mean_min + hoeffding_bound(self.n_min, conf) >= mean + eps:
            self.n_min, self.s_min = self.total_n, self.total_s

        mean_max = self._norm(self.s_max, self.n_max)
        if mean_max - hoeffding_bound(self.n_max, conf) <= mean - eps:
            self.n_max, self.s_max = self.total_n, self.total_s

        if self.hi == self.lo:
            return None

        means = None
        n_min, n_max = self.n_min, self.n_max
        if n_min < self.total_n and mean - self._norm(self.s_min, n_min) \
                >= mean_shift(n_min, self.total_n, conf):
            means = self._means_at(self.s_min, n_min)
        elif n_max < self.total_n and self._norm(self.s_max, n_max) - mean \
                >= mean_shift(n_max, self.total_n, conf):
            means = self._means_at(self.s_max, n_max)

        if means is not None:
            log.debug('hddm change after {} values, means {:.3f} -> {:.3f}'
                .format(self.total_n, *means))
            self._reset()
        return means


    def _means_at(self, s_cut, n_cut):
        """
        Calculate means of values before and after a cut point.
        """
        n = self.total_n - n_cut
        return s_cut / n_cut, (self.total_s - s_cut) / n


# vim: sw=4:et:ai
