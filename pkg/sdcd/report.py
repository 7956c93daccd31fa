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
Delay change detection reports.

Detection events are summarized per day, sliced by hour of day and
exported as GeoJSON point layer with points placed at destination stops
of edges.
"""

import csv
import itertools
import json
import logging
from collections import namedtuple, Counter, defaultdict

import geojson
import numpy as np

from .calc import UnusableRecordError, delay, service_date
from .data import Edge
from .engine import DetectionEvent, Direction, SignalKind, parse_key
from .ingest import InputError, read_lines
from .util import UTC, fmt_time, nformat, parse_time

log = logging.getLogger('sdcd.report')

SUMMARY_COLUMNS = ('signal', 'date', 'records', 'increases', 'reductions',
    'median_s', 'std_s')

DailySummary = namedtuple('DailySummary', 'signal date records increases'
    ' reductions median std')
DailySummary.__doc__ = """
Daily summary of detected delay changes.

Median and standard deviation of absolute detection values are ``None``
for a day without detections.
"""

DataSummary = namedtuple('DataSummary', 'records linked_ratio edges_per_day'
    ' courses_per_edge abs_delay')
DataSummary.__doc__ = """
Characteristics of vehicle snapshots stream.

:Attributes:
 records
    Number of snapshots.
 linked_ratio
    Ratio of records linked with schedule.
 edges_per_day
    Mapping of day to number of observed edges.
 courses_per_edge
    Median number of courses per edge and day.
 abs_delay
    Mapping of edge to median absolute delay.
"""


def check_hours(from_hour=None, to_hour=None):
    """
    Check and resolve hour of day slice bounds.

    Missing bound is replaced with start or end of day.

    >>> check_hours(6, None)
    (6, 24)

    :Parameters:
     from_hour
        Start hour (inclusive).
     to_hour
        End hour (exclusive).
    """
    from_hour = 0 if from_hour is None else from_hour
    to_hour = 24 if to_hour is None else to_hour
    if not 0 <= from_hour < to_hour <= 24:
        raise ValueError('Invalid hour slice {}-{}'.format(from_hour, to_hour))
    return from_hour, to_hour


def slice_hours(events, from_hour=None, to_hour=None):
    """
    Filter detection events by hour of day.

    :Parameters:
     events
        Iterator of detection events.
     from_hour
        Start hour (inclusive).
     to_hour
        End hour (exclusive).
    """
    from_hour, to_hour = check_hours(from_hour, to_hour)
    return (e for e in events if from_hour <= e.hour < to_hour)


def cutoff(events, min_abs=None):
    """
    Remove detection events with small absolute value.

    :Parameters:
     events
        Iterator of detection events.
     min_abs
        Minimal absolute value of kept events in seconds.
    """
    if min_abs is None:
        return iter(events)
    return (e for e in events if abs(e.value) >= min_abs)


def lower_median(values):
    """
    Find median of values, lower of two middle values for even count.

    >>> lower_median([162, 100, 131, 140])
    131
    """
    values = sorted(values)
    return values[(len(values) - 1) // 2]


def summarize(events, records, tz=UTC, signal=None):
    """
    Summarize detection events per day and signal kind.

    A row is created for each day with processed records or detections.
    Signal kinds of rows are signal kinds of the events and the signal
    kind specified with parameter ``signal``. If there are no events and
    no signal kind specified, then delay signal is assumed.

    :Parameters:
     events
        Iterator of detection events.
     records
        Mapping of day to number of processed records.
     tz
        Time zone of days.
     signal
        Signal kind of the run.
    """
    values = defaultdict(list)
    directions = Counter()
    signals = set() if signal is None else {signal}
    for e in events:
        day = e.event_time.astimezone(tz).date()
        values[e.signal, day].append(abs(e.value))
        directions[e.signal, day, e.direction] += 1
        signals.add(e.signal)

    if not signals:
        signals.add(SignalKind.DELAY)
    days = set(records) | set(d for _, d in values)

    rows = []
    for day, s in itertools.product(sorted(days), sorted(signals,
            key=lambda s: s.value)):
        v = values.get((s, day))
        rows.append(DailySummary(s, day, records.get(day, 0),
            directions[s, day, Direction.INCREASE],
            directions[s, day, Direction.REDUCTION],
            lower_median(v) if v else None,
            float(np.std(v)) if v else None))
    return rows


def format_summary_row(row):
    """
    Format daily summary as row of summary table.

    :Parameters:
     row
        Daily summary.
    """
    return (row.signal.value, row.date.isoformat(), str(row.records),
        str(row.increases), str(row.reductions),
        nformat('{:.1f}', row.median), nformat('{:.1f}', row.std))


def write_summary_csv(f, rows):
    """
    Write daily summaries as CSV table.

    :Parameters:
     f
        File object.
     rows
        Daily summaries.
    """
    writer = csv.writer(f, lineterminator='\n')
    writer.writerow(SUMMARY_COLUMNS)
    writer.writerows(format_summary_row(r) for r in rows)


def write_summary_json(f, rows):
    """
    Write daily summaries as JSON document.

    :Parameters:
     f
        File object.
     rows
        Daily summaries.
    """
    data = [dict(zip(SUMMARY_COLUMNS, (r.signal.value, r.date.isoformat(),
        r.records, r.increases, r.reductions, r.median, r.std))) for r in rows]
    json.dump(data, f, indent=2, sort_keys=True)
    f.write('\n')


def format_event(event):
    """
    Format detection event as line of JSON Lines file.

    :Parameters:
     event
        Detection event.
    """
    data = event._asdict()
    data.update(key=str(event.key), signal=event.signal.value,
        event_time=fmt_time(event.event_time),
        direction=event.direction.value)
    return json.dumps(data, sort_keys=True)


def parse_event(line):
    """
    Parse detection event from a line of JSON Lines file.

    :Parameters:
     line
        Line of text.
    """
    try:
        data = json.loads(line)
        data.update(key=parse_key(data['key']),
            signal=SignalKind(data['signal']),
            event_time=parse_time(data['event_time']),
            direction=Direction(data['direction']))
        return DetectionEvent(**data)
    except (KeyError, TypeError, AttributeError, ValueError) as ex:
        raise ValueError('Cannot parse detection event: {}'.format(ex))


def read_detections(path):
    """
    Read detection events from JSON Lines file.

    `InputError` is raised on unparsable event.

    :Parameters:
     path
        Detections file path.
    """
    events = []
    for i, line in read_lines(path):
        try:
            events.append(parse_event(line.decode('utf-8')))
        except ValueError as ex:
            raise InputError('{}:{}: {}'.format(path, i, ex))
    log.debug('detections read from {}: {}'.format(path, len(events)))
    return events


def to_geojson(events, stops=None):
    """
    Create GeoJSON point layer of detection events.

    Each event is a point at destination stop of its edge. Tuple of
    feature collection and list of events without known stop position is
    returned.

    :Parameters:
     events
        Iterator of detection events.
     stops
        Mapping of stop id to position (lat, lon).
    """
    stops = stops or {}
    features = []
    unplaced = []
    for e in events:
        if e.lat is not None and e.lon is not None:
            lat, lon = e.lat, e.lon
        elif e.key.curr in stops:
            lat, lon = stops[e.key.curr]
        else:
            unplaced.append(e)
            continue
        props = {
            'direction': e.direction.value,
            'signal': e.signal.value,
            'detector': e.detector,
            'time': fmt_time(e.event_time),
            'key': str(e.key),
            'value': e.value,
        }
        features.append(geojson.Feature(geometry=geojson.Point((lon, lat)),
            properties=props))

    if unplaced:
        log.warning('detections without stop position: {}'.format(
            len(unplaced)))
    return geojson.FeatureCollection(features), unplaced


def write_geojson(f, collection):
    """
    Write GeoJSON document.

    :Parameters:
     f
        File object.
     collection
        GeoJSON feature collection.
    """
    if not collection.is_valid:
        raise ValueError('Invalid GeoJSON: {}'.format(collection.errors()))
    geojson.dump(collection, f, sort_keys=True)
    f.write('\n')


def describe(snapshots, stats=None, tz=UTC):
    """
    Calculate characteristics of vehicle snapshots stream.

    :Parameters:
     snapshots
        Iterator of vehicle snapshots.
     stats
        Ingestion statistics of the stream.
     tz
        Time zone of service days.
    """
    records = 0
    courses = defaultdict(set)
    delays = defaultdict(list)
    for s in snapshots:
        records += 1
        e = Edge(s.prev_stop, s.curr_stop)
        courses[service_date(s.event_time, tz), e].add(s.course)
        try:
            delays[e].append(abs(delay(s)))
        except UnusableRecordError:
            pass

    edges = Counter(day for day, _ in courses)
    median = float(np.median([len(c) for c in courses.values()])) \
        if courses else None
    return DataSummary(records, stats.linked_ratio if stats else None,
        dict(sorted(edges.items())), median,
        {e: float(np.median(v)) for e, v in sorted(delays.items())})


# vim: sw=4:et:ai
