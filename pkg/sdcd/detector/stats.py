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
Window statistics and statistical tests used by change detectors.
"""

import math
from collections import namedtuple

import numpy as np


class WindowStats(namedtuple('WindowStats', 'count mean m2')):
    """
    Count, mean and sum of squared deviations of a window of values.

    Statistics of two windows can be merged, and statistics of a
    subwindow can be removed, without access to raw values.
    """
    __slots__ = ()

    @classmethod
    def of(cls, values):
        """
        Calculate statistics of collection of values.

        :Parameters:
         values
            Collection of real values.
        """
        v = np.asarray(values, dtype=float)
        if not len(v):
            return EMPTY_STATS
        mean = v.mean()
        return cls(len(v), float(mean), float(((v - mean) ** 2).sum()))


    @property
    def variance(self):
        """
        Population variance of the window.
        """
        return self.m2 / self.count if self.count else 0.0


    def add(self, value):
        """
        Add single value to the window statistics.

        >>> EMPTY_STATS.add(1.0).add(3.0)
        WindowStats(count=2, mean=2.0, m2=2.0)

        :Parameters:
         value
            Real value.
        """
        n = self.count + 1
        delta = value - self.mean
        mean = self.mean + delta / n
        return WindowStats(n, mean, self.m2 + delta * (value - mean))


    def merge(self, other):
        """
        Merge statistics of two disjoint windows.

        :Parameters:
         other
            Statistics of the other window.
        """
        if not other.count:
            return self
        if not self.count:
            return other
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / n
        m2 = self.m2 + other.m2 + delta ** 2 * self.count * other.count / n
        return WindowStats(n, mean, m2)


    def remove(self, other):
        """
        Remove statistics of a subwindow from the window statistics.

        :Parameters:
         other
            Statistics of the subwindow.
        """
        n = self.count - other.count
        if n < 0:
            raise ValueError('Cannot remove {} values from window of {}'
                .format(other.count, self.count))
        if n == 0:
            return EMPTY_STATS
        if not other.count:
            return self
        mean = (self.count * self.mean - other.count * other.mean) / n
        delta = other.mean - mean
        m2 = self.m2 - other.m2 - delta ** 2 * n * other.count / self.count
        return WindowStats(n, mean, max(m2, 0.0))


EMPTY_STATS = WindowStats(0, 0.0, 0.0)


def ks_statistic(sample_a, sample_b):
    """
    Calculate Kolmogorov-Smirnov statistic of two samples.

    The statistic is the maximum distance between empirical cumulative
    distribution functions of the samples, evaluated at the union of
    sample points.

    >>> ks_statistic([1, 2, 3, 4], [3, 4, 5, 6])
    0.5

    :Parameters:
     sample_a
        First sample of real values.
     sample_b
        Second sample of real values.
    """
    a = np.sort(np.asarray(sample_a, dtype=float))
    b = np.sort(np.asarray(sample_b, dtype=float))
    if not len(a) or not len(b):
        raise ValueError('Kolmogorov-Smirnov statistic of empty sample')
    x = np.concatenate((a, b))
    cdf_a = np.searchsorted(a, x, side='right') / len(a)
    cdf_b = np.searchsorted(b, x, side='right') / len(b)
    return float(np.abs(cdf_a - cdf_b).max())


def ks_threshold(alpha, n, m):
    """
    Calculate Kolmogorov-Smirnov statistic rejection threshold for two
    samples of sizes ``n`` and ``m`` at significance level ``alpha``.

    :Parameters:
     alpha
        Significance level.
     n
        Size of first sample.
     m
        Size of second sample.
    """
    c = math.sqrt(-math.log(alpha / 2) / 2)
    return c * math.sqrt((n + m) / (n * m))


def hoeffding_bound(n, confidence):
    """
    Calculate Hoeffding bound of mean deviation of ``n`` values from
    range [0, 1].

    >>> round(hoeffding_bound(200, 0.002), 4)
    0.1246

    :Parameters:
     n
        Number of values.
     confidence
        Confidence of the bound.
    """
    if n < 1:
        raise ValueError('Hoeffding bound requires at least one value')
    if not 0 < confidence < 1:
        raise ValueError('Confidence {} not in range (0, 1)'.format(confidence))
    return math.sqrt(math.log(1 / confidence) / (2 * n))


# vim: sw=4:et:ai
