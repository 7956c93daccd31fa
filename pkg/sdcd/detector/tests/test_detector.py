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
Change detector interface, configuration and detection quality tests.
"""

import unittest

import numpy as np

from sdcd.detector import DetectorConfig, DetectorError, ChangeDetector, \
    check_config, create_detector, detector_kinds

KINDS = ('adwin', 'kswin', 'hddm')


class FactoryTestCase(unittest.TestCase):
    """
    Change detector factory tests.
    """
    def test_kinds(self):
        """
        Test registered detector kinds
        """
        self.assertEqual(['adwin', 'hddm', 'kswin'], detector_kinds())


    def test_create(self):
        """
        Test creating detectors of all kinds
        """
        for kind in KINDS:
            detector = create_detector(DetectorConfig(kind))
            self.assertIsInstance(detector, ChangeDetector)
            self.assertEqual(kind, detector.kind)
            self.assertEqual(0, detector.observed_count)
            self.assertFalse(detector.detected_change())


    def test_unknown(self):
        """
        Test creating detector of unknown kind
        """
        try:
            create_detector(DetectorConfig('ph'))
            self.fail('unknown detector created')
        except ValueError as ex:
            self.assertIn('ph', str(ex))


    def test_defaults(self):
        """
        Test default detector configuration
        """
        config = DetectorConfig()
        self.assertEqual('adwin', config.kind)
        self.assertEqual(0.002, config.confidence)
        self.assertEqual(100, config.kswin_window)
        self.assertEqual(30, config.kswin_stat)
        self.assertEqual(5, config.adwin_max_buckets)


    def test_invalid_config(self):
        """
        Test detector configuration validation
        """
        invalid = (
            DetectorConfig(confidence=0),
            DetectorConfig(confidence=1.0),
            DetectorConfig(kswin_window=30, kswin_stat=30),
            DetectorConfig(kswin_stat=0),
            DetectorConfig(adwin_max_buckets=1),
        )
        for config in invalid:
            self.assertRaises(ValueError, check_config, config)
            self.assertRaises(ValueError, create_detector, config)



class ContractTestCase(unittest.TestCase):
    """
    Change detector contract tests common to all detector kinds.
    """
    def test_single_value(self):
        """
        Test single value never triggers a change
        """
        for kind in KINDS:
            detector = create_detector(DetectorConfig(kind))
            self.assertFalse(detector.add_value(5.0))
            self.assertFalse(detector.detected_change())
            self.assertRaises(DetectorError, detector.pre_post_means)


    def test_observed_count(self):
        """
        Test counting of observed values
        """
        for kind in KINDS:
            detector = create_detector(DetectorConfig(kind))
            for i in range(250):
                detector.add_value(i % 7)
            self.assertEqual(250, detector.observed_count)


    def test_non_finite(self):
        """
        Test rejecting non-finite values
        """
        for kind in KINDS:
            detector = create_detector(DetectorConfig(kind))
            detector.add_value(1)
            self.assertRaises(ValueError, detector.add_value, float('nan'))
            self.assertRaises(ValueError, detector.add_value, float('-inf'))
            self.assertEqual(1, detector.observed_count)


    def test_detected_change(self):
        """
        Test detected change status follows the last added value
        """
        for kind in KINDS:
            detector = create_detector(DetectorConfig(kind))
            values = [0.0] * 200 + [50.0] * 200
            for v in values:
                if detector.add_value(v):
                    break
            self.assertTrue(detector.detected_change(), kind)
            pre, post = detector.pre_post_means()
            self.assertLess(pre, post)



class QualityTestCase(unittest.TestCase):
    """
    Detection false positive rate and latency tests.
    """
    def test_false_positives(self):
        """
        Test ADWIN and HDDM_A false positive rate on stationary streams
        """
        limits = {'adwin': 0.05, 'hddm': 0.10}
        for kind, rate in limits.items():
            fired = 0
            for seed in range(200):
                values = np.random.default_rng(seed).normal(size=5000)
                detector = create_detector(DetectorConfig(kind))
                fired += any(detector.add_value(v) for v in values)
            self.assertLessEqual(fired / 200, rate, kind)


    def test_kswin_false_positives(self):
        """
        Test KSWIN false positive rate per window test on stationary
        streams
        """
        detections = tests = 0
        for seed in range(200):
            values = np.random.default_rng(seed).normal(size=5000)
            detector = create_detector(DetectorConfig('kswin'))
            for v in values:
                found = detector.add_value(v)
                detections += found
                tests += found or len(detector.window) == detector.size
        self.assertLessEqual(detections / tests, 2 * 0.002)


    def test_latency(self):
        """
        Test detection of step change of five standard deviations
        """
        for kind in KINDS:
            detected = 0
            for seed in range(100):
                values = np.random.default_rng(seed).normal(size=1000)
                values[500:] += 5
                detector = create_detector(DetectorConfig(kind))
                found = [i for i, v in enumerate(values)
                    if detector.add_value(v)]
                detected += any(500 <= i < 800 for i in found)
            self.assertGreaterEqual(detected, 95, kind)


# vim: sw=4:et:ai
