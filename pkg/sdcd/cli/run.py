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
Streaming delay change detection run command.
"""

import logging

from sdcd.component import inject
from sdcd.cli import CLICommand, add_hours
from sdcd.detector import DetectorConfig, detector_kinds
from sdcd.engine import KeyingMode, SignalKind

log = logging.getLogger('sdcd.cli.run')

DEFAULTS = DetectorConfig()


def add_source(parser):
    """
    Add vehicle snapshots source options to a parser.

    :Parameters:
     parser
        ``argparse`` library parser.
    """
    parser.add_argument('--source',
            metavar='file',
            help='vehicle location records file to replay')
    parser.add_argument('--schedule',
            metavar='file',
            help='static schedule file of replayed records')
    parser.add_argument('--stops',
            metavar='file',
            help='stop positions file of replayed records')
    parser.add_argument('--spec',
            metavar='file',
            help='scenario specification file to generate records')
    parser.add_argument('--seed',
            type=int,
            help='random generator seed overriding seed of scenario'
                ' specification')
    parser.add_argument('--timezone',
            default='UTC',
            help='time zone of service days and hours of day (default UTC)')


@inject(CLICommand, name='run')
class Run(object):
    """
    Detect delay changes in stream of vehicle snapshots.
    """
    description = 'detect delay changes in vehicle location records'

    @classmethod
    def add_arguments(self, parser):
        """
        Add options for streaming delay change detection run.
        """
        add_source(parser)
        parser.add_argument('--mode',
                default=KeyingMode.EDGE.value,
                choices=[m.value for m in KeyingMode],
                help='detector per edge or per edge and hour of day'
                    ' (default edge)')
        parser.add_argument('--signal',
                default=SignalKind.DELAY.value,
                choices=[s.value for s in SignalKind],
                help='delay or delay change signal (default delay)')
        parser.add_argument('--detector',
                default=DEFAULTS.kind,
                choices=detector_kinds(),
                help='change detector (default {})'.format(DEFAULTS.kind))
        parser.add_argument('--confidence',
                type=float,
                default=DEFAULTS.confidence,
                help='detector confidence value (default {})'.format(
                    DEFAULTS.confidence))
        parser.add_argument('--kswin-window',
                type=int,
                dest='kswin_window',
                default=DEFAULTS.kswin_window,
                help='KSWIN window size (default {})'.format(
                    DEFAULTS.kswin_window))
        parser.add_argument('--kswin-stat',
                type=int,
                dest='kswin_stat',
                default=DEFAULTS.kswin_stat,
                help='KSWIN statistic block size (default {})'.format(
                    DEFAULTS.kswin_stat))
        parser.add_argument('--workers',
                type=int,
                help='number of worker processes (default: number of CPUs)')
        parser.add_argument('--matrix',
                action='store_true',
                default=False,
                help='run all detectors with both signals')
        parser.add_argument('--emit',
                help='comma separated list of artifacts: detections,'
                    ' summary, geojson (default all)')
        parser.add_argument('--out',
                metavar='dir',
                help='output directory (default $SDCD_OUT or current'
                    ' directory)')
        add_hours(parser)


    def __call__(self, args):
        """
        Execute streaming delay change detection run.
        """
        from sdcd.config import run_config
        from sdcd.pipeline import execute, format_result

        config = run_config(args)
        for result in execute(config):
            print(format_result(result))


# vim: sw=4:et:ai
