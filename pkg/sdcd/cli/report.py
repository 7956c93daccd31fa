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
Detection reports command.
"""

import logging
import os.path
import sys

from sdcd.component import inject
from sdcd.cli import CLICommand, ArgumentError, add_hours

log = logging.getLogger('sdcd.cli.report')


@inject(CLICommand, name='summarize')
class Summarize(object):
    """
    Summarize detection events per day.
    """
    description = 'summarize detected delay changes per day'

    @classmethod
    def add_arguments(self, parser):
        """
        Add options for detection events summary.
        """
        add_hours(parser)
        parser.add_argument('-o', '--output',
                metavar='file',
                help='write CSV summary table into a file')
        parser.add_argument('detections', help='detections file')


    def __call__(self, args):
        """
        Execute detection events summary command.

        Number of records per day and time zone are read from run
        statistics file in directory of detections file.
        """
        from sdcd.pipeline import RUN_INFO, read_run_info
        from sdcd.report import check_hours, cutoff, slice_hours, \
            summarize, read_detections, write_summary_csv
        from sdcd.util import get_tz

        try:
            check_hours(args.from_hour, args.to_hour)
        except ValueError as ex:
            raise ArgumentError(str(ex))

        fn = os.path.join(os.path.dirname(args.detections), RUN_INFO)
        if os.path.exists(fn):
            info = read_run_info(fn)
            tz, signal, records = get_tz(info.timezone), info.signal, \
                info.records
        else:
            log.warning('no run statistics file {}, record counts'
                ' unknown'.format(fn))
            tz, signal, records = get_tz('UTC'), None, {}

        events = read_detections(args.detections)
        events = slice_hours(cutoff(events, args.min_abs), args.from_hour,
            args.to_hour)
        rows = summarize(events, records, tz, signal)

        write_summary_csv(sys.stdout, rows)
        if args.output:
            import sdcd.flow as flow
            d, name = os.path.split(os.path.abspath(args.output))
            with flow.artifacts(d, name) as (f,):
                write_summary_csv(f, rows)


# vim: sw=4:et:ai
