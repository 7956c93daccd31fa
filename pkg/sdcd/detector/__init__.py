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
Change detectors.

The module specifies change detector interface. A detector receives one
real value at a time and reports if the most recent value completed
a statistically significant change of the stream.

Detector implementations register themselves with the component registry
using detector kind, i.e. ``adwin``, and are created with
`create_detector` function.
"""

import logging
import math
from collections import namedtuple

import sdcd.component as sc

log = logging.getLogger('sdcd.detector')

DetectorConfig = namedtuple('DetectorConfig',
    'kind confidence kswin_window kswin_stat adwin_max_buckets',
    defaults=('adwin', 0.002, 100, 30, 5))
DetectorConfig.__doc__ = """
Change detector configuration.

Confidence is the confidence value for ADWIN, significance level for
KSWIN and drift confidence for HDDM_A detector.
"""

class DetectorError(Exception):
    """
    Change detector usage error.
    """


class ChangeDetector(object):
    """
    Change detector interface.

    Implementations provide `_add` method, which updates detector state
    with a value and returns means of the two compared subwindows if
    a change is detected.

    :Attributes:
     observed_count
        Number of values added to the detector.
    """
    kind = None

    def __init__(self, config):
        self.config = config
        self.observed_count = 0
        self._means = None


    def add_value(self, value):
        """
        Add value to the detector and check if change is detected.

        Non-finite value is rejected with `ValueError` and detector state
        is not changed.

        :Parameters:
         value
            Real value.
        """
        value = float(value)
        if not math.isfinite(value):
            raise ValueError('Non-finite value {}'.format(value))
        self._means = self._add(value)
        self.observed_count += 1
        return self._means is not None


    def detected_change(self):
        """
        Check if the last value added to the detector completed a change.
        """
        return self._means is not None


    def pre_post_means(self):
        """
        Get means of the older and newer subwindows, which difference
        triggered the detected change.
        """
        if self._means is None:
            raise DetectorError('No change detected by {} detector'
                .format(self.kind))
        return self._means


    def _add(self, value):
        """
        Update detector state with a value.

        Means of older and newer subwindows are returned on detected
        change, ``None`` otherwise.

        :Parameters:
         value
            Real value.
        """
        raise NotImplementedError()



def check_config(config):
    """
    Validate change detector configuration.

    `ValueError` is raised on invalid configuration.

    :Parameters:
     config
        Change detector configuration.
    """
    if not 0 < config.confidence < 1:
        raise ValueError('Detector confidence {} not in range (0, 1)'
            .format(config.confidence))
    if config.kswin_window < 2:
        raise ValueError('KSWIN window size {} too small'
            .format(config.kswin_window))
    if not 0 < config.kswin_stat < config.kswin_window:
        raise ValueError('KSWIN statistic window size {} not in range'
            ' (0, {})'.format(config.kswin_stat, config.kswin_window))
    if config.adwin_max_buckets < 2:
        raise ValueError('ADWIN bucket row size {} too small'
            .format(config.adwin_max_buckets))
    return config


def detector_kinds():
    """
    Get sorted list of registered detector kinds.
    """
    return sorted(sc.params(cls)['kind'] for cls in sc.query(ChangeDetector))


def create_detector(config):
    """
    Create change detector for a configuration.

    `ValueError` is raised for unknown detector kind or invalid
    configuration.

    :Parameters:
     config
        Change detector configuration.
    """
    check_config(config)
    try:
        cls = sc.find(ChangeDetector, kind=config.kind)
    except LookupError:
        raise ValueError('Unknown detector kind {!r}, use one of: {}'.format(
            config.kind, ', '.join(detector_kinds())))
    return cls(config)


# load detector implementations
from . import adwin, kswin, hddm

# vim: sw=4:et:ai
