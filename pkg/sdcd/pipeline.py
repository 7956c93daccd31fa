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
Streaming delay change detection runs.

A run reads vehicle snapshots from a replayed file or a generated
scenario, feeds them into change detectors and writes run artifacts

- detections.jsonl - detection events, one per line
- summary.csv, summary.json - daily summaries
- detections.geojson - point layer of detections
- detections-unplaced.jsonl - detections without stop position
- run.json - run statistics

All artifacts of a run are written or none of them.
"""

import datetime
import json
import logging
import os.path
from collections import namedtuple, Counter

from . import flow
from .detector import detector_kinds
from .engine import EngineConfig, Direction, SignalKind, run_sharded
from .ingest import IngestStats, InputError, link_records, load_schedule, \
    load_stops, replay
from .report import cutoff, slice_hours, summarize, to_geojson, \
    format_event, write_geojson, write_summary_csv, write_summary_json
from .simulation import Scenario, load_spec
from .util import get_tz

log = logging.getLogger('sdcd.pipeline')

DETECTIONS = 'detections.jsonl'
SUMMARY_CSV = 'summary.csv'
SUMMARY_JSON = 'summary.json'
GEOJSON = 'detections.geojson'
UNPLACED = 'detections-unplaced.jsonl'
RUN_INFO = 'run.json'

RunResult = namedtuple('RunResult', 'out_dir events summary ingest engine')
RunInfo = namedtuple('RunInfo', 'timezone signal records')


def open_source(source, stats, seed=None, timezone='UTC'):
    """
    Open source of vehicle snapshots.

    Tuple of snapshots iterator and mapping of stop id to stop position is
    returned.

    :Parameters:
     source
        Source of vehicle snapshots.
     stats
        Ingestion statistics to update.
     seed
        Random generator seed overriding seed of scenario specification.
     timezone
        Time zone of service days of replayed schedule.
    """
    if source.kind == 'synth':
        spec = load_spec(source.path, seed=seed)
        scenario = Scenario(spec)
        snapshots = link_records(scenario.records(), scenario.schedule_table(),
            stats)
        return snapshots, scenario.stops

    schedule = load_schedule(source.schedule, get_tz(timezone))
    stops = load_stops(source.stops) if source.stops else {}
    return replay(source.path, schedule, stats), stops


def run_info(config, ingest, stats, events):
    """
    Create run statistics document.

    :Parameters:
     config
        Run configuration.
     ingest
        Ingestion statistics.
     stats
        Engine statistics.
     events
        Reported detection events.
    """
    directions = Counter(e.direction.value for e in events)
    return {
        'timezone': config.timezone,
        'mode': config.mode.value,
        'signal': config.signal.value,
        'detector': config.detector._asdict(),
        'ingest': ingest.as_dict(),
        'engine': {
            'seen': stats.seen,
            'processed': stats.processed,
            'skipped_late': stats.skipped_late,
            'skipped_unusable': stats.skipped_unusable,
            'skipped_not_in_service': stats.skipped_not_in_service,
            'detectors': stats.detectors,
            'stops': len(stats.graph.stops),
            'edges': len(stats.graph.edges),
        },
        'records': {d.isoformat(): n for d, n in sorted(stats.daily().items())},
        'hourly': {'{}T{:02d}'.format(d.isoformat(), h): n
            for (d, h), n in sorted(stats.hourly.items())},
        'detections': {d.value: directions[d.value] for d in Direction},
    }


def read_run_info(path):
    """
    Read run statistics document.

    :Parameters:
     path
        Run statistics file path.
    """
    try:
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
        records = {datetime.date.fromisoformat(d): int(n)
            for d, n in data['records'].items()}
        return RunInfo(data['timezone'], SignalKind(data['signal']), records)
    except OSError as ex:
        raise InputError('Cannot read run statistics {}: {}'.format(
            path, ex.strerror))
    except (KeyError, TypeError, AttributeError, ValueError) as ex:
        raise InputError('Cannot parse run statistics {}: {}'.format(path, ex))


def run_once(config, out_dir=None):
    """
    Execute single streaming delay change detection run and write its
    artifacts.

    :Parameters:
     config
        Run configuration.
     out_dir
        Output directory, output directory of run configuration by default.
    """
    out_dir = out_dir or config.out_dir
    tz = get_tz(config.timezone)
    ingest = IngestStats()
    snapshots, stops = open_source(config.source, ingest, config.seed,
        config.timezone)

    engine_config = EngineConfig(config.mode, config.signal, config.detector,
        config.timezone)
    events, stats = run_sharded(engine_config, snapshots, config.workers,
        stops)

    events = list(flow.pipe(events,
        lambda v: cutoff(v, config.min_abs),
        lambda v: slice_hours(v, config.from_hour, config.to_hour)))
    rows = summarize(events, stats.daily(), tz, config.signal)

    names = [RUN_INFO]
    if 'detections' in config.emit:
        names.append(DETECTIONS)
    if 'summary' in config.emit:
        names.extend((SUMMARY_CSV, SUMMARY_JSON))
    collection, unplaced = None, []
    if 'geojson' in config.emit:
        collection, unplaced = to_geojson(events, stops)
        names.append(GEOJSON)
        if unplaced:
            names.append(UNPLACED)

    with flow.artifacts(out_dir, *names) as files:
        f = dict(zip(names, files))
        json.dump(run_info(config, ingest, stats, events), f[RUN_INFO],
            indent=2, sort_keys=True)
        f[RUN_INFO].write('\n')
        if DETECTIONS in f:
            flow.send(events, flow.lines(f[DETECTIONS], format_event))
        if SUMMARY_CSV in f:
            write_summary_csv(f[SUMMARY_CSV], rows)
            write_summary_json(f[SUMMARY_JSON], rows)
        if GEOJSON in f:
            write_geojson(f[GEOJSON], collection)
        if UNPLACED in f:
            flow.send(unplaced, flow.lines(f[UNPLACED], format_event))

    log.info('run artifacts written to {}'.format(out_dir))
    return RunResult(out_dir, events, rows, ingest, stats)


def matrix(config):
    """
    Generate run configurations of all detector kinds and signal kinds.

    Each run writes its artifacts into ``<detector>-<signal>``
    subdirectory of the output directory.

    :Parameters:
     config
        Run configuration.
    """
    for kind in detector_kinds():
        for signal in SignalKind:
            c = config._replace(signal=signal,
                detector=config.detector._replace(kind=kind))
            yield c, os.path.join(config.out_dir,
                '{}-{}'.format(kind, signal.value))


def execute(config):
    """
    Execute streaming delay change detection run or runs of run matrix.

    List of run results is returned.

    :Parameters:
     config
        Run configuration.
    """
    if not config.matrix:
        return [run_once(config)]
    return [run_once(c, out) for c, out in matrix(config)]


def format_result(result):
    """
    Format run statistics for display.

    :Parameters:
     result
        Run result.
    """
    directions = Counter(e.direction for e in result.events)
    ratio = result.ingest.linked_ratio
    return ('{}: records: {}, linked: {}, processed: {}, detectors: {},'
        ' increases: {}, reductions: {}'.format(result.out_dir,
        result.ingest.total,
        '{:.1%}'.format(ratio) if ratio is not None else 'n/a',
        result.engine.processed, result.engine.detectors,
        directions[Direction.INCREASE], directions[Direction.REDUCTION]))


# vim: sw=4:et:ai
