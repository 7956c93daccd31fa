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
ADWIN change detector.

The detector keeps adaptive window of recent values compressed into
exponential histogram of buckets. Row ``i`` of the histogram keeps at most
``adwin_max_buckets`` buckets, each summarizing ``2 ** i`` values. When
means of an older and a newer subwindow differ by more than a bound
derived from confidence value, the window is split at the change and
the older subwindow is dropped. The change is located at the split with
the least sum of squared deviations of values from subwindow means, so
the newer subwindow holds values observed after the change.
"""

import logging
import math

from sdcd.component import inject
from . import ChangeDetector
from .stats import WindowStats, EMPTY_STATS

log = logging.getLogger('sdcd.detector.adwin')

# window length required before checking for a change
GRACE_WIDTH = 10
# minimum length of a subwindow
MIN_SUB_WIDTH = 5
# window length, above which change is checked every CLOCK values
CLOCK_WIDTH = 1024
CLOCK = 32


def cut_bound(n0, n1, width, variance, delta):
    """
    Calculate the bound of mean difference of two subwindows.

    :Parameters:
     n0
        Length of older subwindow.
     n1
        Length of newer subwindow.
     width
        Window length.
     variance
        Population variance of the window.
     delta
        Confidence value.
    """
    m = 1 / (n0 - MIN_SUB_WIDTH + 1) + 1 / (n1 - MIN_SUB_WIDTH + 1)
    d = math.log(2 * math.log(width) / delta)
    return math.sqrt(2 * m * variance * d) + 2 / 3 * m * d


def check_due(ticks, width):
    """
    Check if window shall be checked for a change.

    :Parameters:
     ticks
        Number of values added to the detector.
     width
        Window length.
    """
    return width >= GRACE_WIDTH \
        and (width <= CLOCK_WIDTH or ticks % CLOCK == 0)


@inject(ChangeDetector, kind='adwin')
class ADWIN(ChangeDetector):
    """
    ADWIN change detector.

    :Attributes:
     rows
        Bucket rows, row ``i`` is list of statistics of ``2 ** i`` values,
        oldest bucket first.
     total
        Statistics of the whole window.
    """
    kind = 'adwin'

    def __init__(self, config):
        super().__init__(config)
        self.delta = config.confidence
        self.max_buckets = config.adwin_max_buckets
        self.rows = []
        self.total = EMPTY_STATS


    @property
    def width(self):
        """
        Length of the window.
        """
        return self.total.count


    def _add(self, value):
        self._insert(value)
        if not check_due(self.observed_count + 1, self.width):
            return None
        return self._reduce()


    def _insert(self, value):
        bucket = WindowStats(1, value, 0.0)
        self.total = self.total.merge(bucket)
        if not self.rows:
            self.rows.append([])
        self.rows[0].append(bucket)

        i = 0
        while len(self.rows[i]) > self.max_buckets:
            b1, b2 = self.rows[i][:2]
            del self.rows[i][:2]
            if i + 1 == len(self.rows):
                self.rows.append([])
            self.rows[i + 1].append(b1.merge(b2))
            i += 1


    def _buckets(self):
        """
        Iterate over buckets from the oldest to the newest one.
        """
        for row in reversed(self.rows):
            yield from row


    def _split(self):
        """
        Find split of the window at a change.

        Splits are at bucket boundaries. If means of subwindows of any split
        differ significantly, then the split separating the subwindows best,
        the one with the largest ``n0 * n1 * (m0 - m1) ** 2``, is returned
        as tuple (number of buckets of older subwindow, older mean, newer
        mean). Otherwise ``None`` is returned.
        """
        width = self.width
        var = self.total.variance
        total_sum = width * self.total.mean
        n0 = 0
        s0 = 0.0
        changed = False
        best = None
        score = -1.0
        buckets = list(self._buckets())
        for k, b in enumerate(buckets[:-1], 1):
            n0 += b.count
            s0 += b.count * b.mean
            n1 = width - n0
            if n0 < MIN_SUB_WIDTH:
                continue
            if n1 < MIN_SUB_WIDTH:
                break
            m0 = s0 / n0
            m1 = (total_sum - s0) / n1
            diff = m0 - m1
            if abs(diff) > cut_bound(n0, n1, width, var, self.delta):
                changed = True
            s = n0 * n1 * diff * diff
            if s > score:
                score = s
                best = k, m0, m1
        return best if changed else None


    def _drop_oldest(self):
        row = self.rows[-1]
        self.total = self.total.remove(row.pop(0))
        while self.rows and not self.rows[-1]:
            self.rows.pop()


    def _reduce(self):
        """
        Drop older subwindow of the window split at a change, until no
        change is found.

        Means of the subwindows of the first split are returned, ``None``
        if the window is not reduced.
        """
        means = None
        split = self._split()
        while split:
            k, m0, m1 = split
            if means is None:
                means = m0, m1
                log.debug('adwin change at width {}, means {:.3f} -> {:.3f}'
                    .format(self.width, m0, m1))
            for i in range(k):
                self._drop_oldest()
            split = self._split()
        return means


# vim: sw=4:et:ai
