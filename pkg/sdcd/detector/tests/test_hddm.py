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
HDDM_A change detector tests.
"""

import unittest

import numpy as np

from sdcd.detector import DetectorConfig, DetectorError, create_detector
from sdcd.detector.hddm import HDDM_A, mean_shift


def feed(detector, values):
    return [i for i, v in enumerate(values) if detector.add_value(v)]


class HDDMTestCase(unittest.TestCase):
    """
    HDDM_A change detector tests.
    """
    def setUp(self):
        self.detector = create_detector(DetectorConfig('hddm'))


    def test_create(self):
        """
        Test creating HDDM_A detector
        """
        self.assertIsInstance(self.detector, HDDM_A)
        self.assertEqual(0, self.detector.total_n)


    def test_single_value(self):
        """
        Test adding single value
        """
        self.assertFalse(self.detector.add_value(100.0))


    def test_constant(self):
        """
        Test constant stream never triggers change
        """
        self.assertFalse(feed(self.detector, [42.0] * 20000))
        self.assertRaises(DetectorError, self.detector.pre_post_means)


    def test_increase(self):
        """
        Test detecting mean increase
        """
        rng = np.random.default_rng(13)
        values = np.concatenate((rng.normal(0, 10, 500),
            rng.normal(120, 10, 500)))
        for i, v in enumerate(values):
            if self.detector.add_value(v):
                break
        self.assertTrue(500 <= i < 800, i)
        pre, post = self.detector.pre_post_means()
        self.assertLess(pre, post)
        self.assertEqual(0, self.detector.total_n)


    def test_decrease(self):
        """
        Test detecting mean decrease
        """
        rng = np.random.default_rng(14)
        values = np.concatenate((rng.normal(120, 10, 500),
            rng.normal(0, 10, 500)))
        for i, v in enumerate(values):
            if self.detector.add_value(v):
                break
        self.assertTrue(500 <= i < 800, i)
        pre, post = self.detector.pre_post_means()
        self.assertGreater(pre, post)


    def test_extrema_kept(self):
        """
        Test running extrema kept after detected change
        """
        feed(self.detector, [0.0] * 100 + [1.0] * 100)
        self.assertEqual(0.0, self.detector.lo)
        self.assertEqual(1.0, self.detector.hi)


    def test_mean_shift(self):
        """
        Test mean shift bound
        """
        self.assertAlmostEqual(0.0, mean_shift(10, 10, 0.002))
        self.assertGreater(mean_shift(10, 20, 0.002), mean_shift(100, 200, 0.002))


# vim: sw=4:et:ai
