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
Tests of window statistics and statistical tests.
"""

import math
import unittest

import numpy as np
from scipy.stats import ks_2samp

from sdcd.detector.stats import WindowStats, EMPTY_STATS, ks_statistic, \
    ks_threshold, hoeffding_bound


class WindowStatsTestCase(unittest.TestCase):
    """
    Window statistics tests.
    """
    def assertStats(self, expected, stats):
        self.assertEqual(expected.count, stats.count)
        self.assertTrue(math.isclose(expected.mean, stats.mean,
            rel_tol=1e-9, abs_tol=1e-12), (expected, stats))
        self.assertTrue(math.isclose(expected.variance, stats.variance,
            rel_tol=1e-9, abs_tol=1e-12), (expected, stats))


    def test_of(self):
        """
        Test calculating statistics of values
        """
        stats = WindowStats.of([1, 2, 3, 4])
        self.assertEqual(4, stats.count)
        self.assertEqual(2.5, stats.mean)
        self.assertEqual(1.25, stats.variance)


    def test_empty(self):
        """
        Test statistics of empty window
        """
        self.assertEqual(EMPTY_STATS, WindowStats.of([]))
        self.assertEqual(0.0, EMPTY_STATS.variance)


    def test_add(self):
        """
        Test adding values one by one
        """
        values = np.random.default_rng(1).normal(50, 10, size=500)
        stats = EMPTY_STATS
        for v in values:
            stats = stats.add(v)
        self.assertStats(WindowStats.of(values), stats)


    def test_merge(self):
        """
        Test merging statistics of two windows
        """
        rng = np.random.default_rng(2)
        for i in range(20):
            a = rng.normal(0, 1, size=rng.integers(1, 200))
            b = rng.normal(3, 5, size=rng.integers(1, 200))
            stats = WindowStats.of(a).merge(WindowStats.of(b))
            self.assertStats(WindowStats.of(np.concatenate((a, b))), stats)


    def test_merge_empty(self):
        """
        Test merging statistics with empty window
        """
        stats = WindowStats.of([1, 5])
        self.assertEqual(stats, stats.merge(EMPTY_STATS))
        self.assertEqual(stats, EMPTY_STATS.merge(stats))


    def test_remove(self):
        """
        Test removing statistics of a subwindow
        """
        rng = np.random.default_rng(3)
        values = rng.normal(100, 20, size=300)
        stats = WindowStats.of(values).remove(WindowStats.of(values[:120]))
        self.assertStats(WindowStats.of(values[120:]), stats)


    def test_remove_all(self):
        """
        Test removing all values of a window
        """
        stats = WindowStats.of([1, 2, 3])
        self.assertEqual(EMPTY_STATS, stats.remove(stats))


    def test_remove_too_many(self):
        """
        Test removing subwindow larger than a window
        """
        stats = WindowStats.of([1, 2, 3])
        self.assertRaises(ValueError, stats.remove, WindowStats.of(range(4)))



class KSStatisticTestCase(unittest.TestCase):
    """
    Kolmogorov-Smirnov statistic tests.
    """
    def test_identical(self):
        """
        Test statistic of identical samples
        """
        self.assertEqual(0.0, ks_statistic([1, 2, 3], [1, 2, 3]))


    def test_disjoint(self):
        """
        Test statistic of samples with disjoint supports
        """
        self.assertEqual(1.0, ks_statistic([0, 0, 0], [1, 1, 1]))


    def test_overlap(self):
        """
        Test statistic of overlapping samples
        """
        self.assertEqual(0.5, ks_statistic([1, 2, 3, 4], [3, 4, 5, 6]))


    def test_unordered(self):
        """
        Test statistic of unordered samples
        """
        self.assertEqual(0.5, ks_statistic([4, 2, 3, 1], [6, 3, 5, 4]))


    def test_empty(self):
        """
        Test statistic of empty sample
        """
        self.assertRaises(ValueError, ks_statistic, [], [1])
        self.assertRaises(ValueError, ks_statistic, [1], [])


    def test_scipy(self):
        """
        Test statistic against scipy two sample test
        """
        rng = np.random.default_rng(4)
        for i in range(50):
            a = rng.normal(0, 1, size=70)
            b = rng.normal(0.3, 1.5, size=30)
            expected = ks_2samp(a, b).statistic
            self.assertAlmostEqual(expected, ks_statistic(a, b), places=12)


    def test_ties(self):
        """
        Test statistic of samples with ties against scipy
        """
        rng = np.random.default_rng(5)
        for i in range(50):
            a = rng.integers(0, 5, size=40)
            b = rng.integers(1, 6, size=25)
            expected = ks_2samp(a, b).statistic
            self.assertAlmostEqual(expected, ks_statistic(a, b), places=12)


    def test_threshold(self):
        """
        Test Kolmogorov-Smirnov rejection threshold
        """
        c = math.sqrt(-math.log(0.001) / 2)
        expected = c * math.sqrt(100 / 2100)
        self.assertAlmostEqual(expected, ks_threshold(0.002, 70, 30))



class HoeffdingBoundTestCase(unittest.TestCase):
    """
    Hoeffding bound tests.
    """
    def test_single(self):
        """
        Test Hoeffding bound of single value
        """
        self.assertAlmostEqual(math.sqrt(0.5), hoeffding_bound(1, 1 / math.e))


    def test_value(self):
        """
        Test Hoeffding bound value
        """
        self.assertAlmostEqual(0.1246, hoeffding_bound(200, 0.002), places=4)


    def test_scaling(self):
        """
        Test Hoeffding bound halves for four times more values
        """
        b1 = hoeffding_bound(50, 0.002)
        b2 = hoeffding_bound(200, 0.002)
        self.assertAlmostEqual(b1 / 2, b2)


    def test_invalid(self):
        """
        Test Hoeffding bound with invalid parameters
        """
        self.assertRaises(ValueError, hoeffding_bound, 0, 0.002)
        self.assertRaises(ValueError, hoeffding_bound, 10, 0)
        self.assertRaises(ValueError, hoeffding_bound, 10, 1)


# vim: sw=4:et:ai
