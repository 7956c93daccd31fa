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
Vehicle location data commands.

Scenario records generation, preview of detector keys and description of
data characteristics.
"""

import logging

from sdcd.component import inject
from sdcd.cli import CLICommand
from sdcd.cli.run import add_source
from sdcd.engine import KeyingMode

log = logging.getLogger('sdcd.cli.data')

SNAPSHOTS = 'snapshots.jsonl'
SCHEDULE = 'schedule.jsonl'
STOPS = 'stops.jsonl'
TRUTH = 'truth.jsonl'
LEDGER = 'ledger.jsonl'


def _source(args):
    """
    Open vehicle snapshots source specified with command line arguments.
    """
    from sdcd.config import ConfigError, source_config
    from sdcd.ingest import IngestStats
    from sdcd.pipeline import open_source
    from sdcd.util import get_tz

    try:
        get_tz(args.timezone)
    except ValueError as ex:
        raise ConfigError(str(ex))
    stats = IngestStats()
    source = source_config(args)
    snapshots, _ = open_source(source, stats, args.seed, args.timezone)
    return snapshots, stats


@inject(CLICommand, name='synth')
class Synth(object):
    """
    Generate vehicle location records of a synthetic scenario.
    """
    description = 'generate vehicle location records of synthetic scenario'

    @classmethod
    def add_arguments(self, parser):
        """
        Add options for scenario records generation.
        """
        parser.add_argument('--seed',
                type=int,
                help='random generator seed overriding seed of scenario'
                    ' specification')
        parser.add_argument('spec', help='scenario specification file')
        parser.add_argument('output',
                help='output directory of records, schedule, stops, ground'
                    ' truth and dispatch ledger files')


    def __call__(self, args):
        """
        Execute scenario records generation command.
        """
        import sdcd.flow as flow
        from sdcd.ingest import format_record, format_schedule_entry, \
            format_stop
        from sdcd.simulation import Scenario, load_spec, format_truth, \
            format_ledger

        scenario = Scenario(load_spec(args.spec, seed=args.seed))
        names = SNAPSHOTS, SCHEDULE, STOPS, TRUTH, LEDGER
        with flow.artifacts(args.output, *names) as files:
            f = dict(zip(names, files))
            flow.send(scenario.records(), flow.lines(f[SNAPSHOTS],
                format_record))
            flow.send(scenario.schedule(), flow.lines(f[SCHEDULE],
                format_schedule_entry))
            flow.send(sorted(scenario.stops.items()), flow.lines(f[STOPS],
                lambda v: format_stop(*v)))
            flow.send(scenario.truth, flow.lines(f[TRUTH], format_truth))
            flow.send(sorted(scenario.ledger.items()), flow.lines(f[LEDGER],
                lambda v: format_ledger(*v)))

        print('{}: records: {}, courses: {}, stops: {}, edges: {}'.format(
            args.output, sum(scenario.ledger.values()), len(scenario.courses),
            len(scenario.stops), len(scenario.ledger)))



@inject(CLICommand, name='preview')
class Preview(object):
    """
    Count vehicle snapshots per detector key.
    """
    description = 'count vehicle snapshots per detector key'

    @classmethod
    def add_arguments(self, parser):
        """
        Add options for detector keys preview.
        """
        add_source(parser)
        parser.add_argument('--mode',
                default=KeyingMode.EDGE.value,
                choices=[m.value for m in KeyingMode],
                help='detector per edge or per edge and hour of day'
                    ' (default edge)')


    def __call__(self, args):
        """
        Execute detector keys preview command.
        """
        from sdcd.ingest import shuffle_preview
        from sdcd.util import get_tz

        snapshots, _ = _source(args)
        counts = shuffle_preview(snapshots, KeyingMode(args.mode),
            get_tz(args.timezone))
        for key, n in sorted(counts.items(), key=lambda v: str(v[0])):
            print('{}: {}'.format(key, n))
        print('keys: {}, records: {}'.format(len(counts), sum(counts.values())))



@inject(CLICommand, name='describe')
class Describe(object):
    """
    Describe characteristics of vehicle snapshots stream.
    """
    description = 'describe characteristics of vehicle location records'

    @classmethod
    def add_arguments(self, parser):
        """
        Add options for data description.
        """
        add_source(parser)


    def __call__(self, args):
        """
        Execute data description command.
        """
        from sdcd.report import describe
        from sdcd.util import get_tz, nformat

        snapshots, stats = _source(args)
        data = describe(snapshots, stats, get_tz(args.timezone))
        print('records: {}'.format(data.records))
        print(nformat('linked ratio: {:.1%}', data.linked_ratio))
        print(nformat('median courses per edge and day: {:.1f}',
            data.courses_per_edge))
        for day, n in data.edges_per_day.items():
            print('{}: edges: {}'.format(day, n))
        for e, v in data.abs_delay.items():
            print('{}->{}: median |delay|: {:.1f}s'.format(e.prev, e.curr, v))


# vim: sw=4:et:ai
