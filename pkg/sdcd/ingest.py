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
Vehicle location data ingestion.

Vehicle location records are read from JSON Lines files and linked with
static schedule to create stream of vehicle snapshots. Records of
vehicles not in service, records without schedule match and unparsable
records are counted and skipped.
"""

import datetime
import json
import logging
from collections import namedtuple, Counter

from .calc import service_date
from .data import VehicleSnapshot, stop_id, validate
from .engine import detector_id
from .util import UTC, fmt_time, parse_time

log = logging.getLogger('sdcd.ingest')

IN_SERVICE = 'IN_SERVICE'
NOT_IN_SERVICE = 'NOT_IN_SERVICE'

# skip reasons
NOT_IN_SERVICE_REASON = 'not_in_service'
UNPARSABLE = 'unparsable'
UNLINKED = 'unlinked'
UNUSABLE = 'unusable'

RawLocationRecord = namedtuple('RawLocationRecord', 'event_time vehicle line'
    ' course lat lon curr_stop prev_stop real_dep_curr real_dep_prev status')
ScheduleEntry = namedtuple('ScheduleEntry',
    'line course stop sched_departure service_date')

class InputError(Exception):
    """
    Input data file error.
    """


class IngestStats(object):
    """
    Vehicle location records ingestion statistics.

    :Attributes:
     total
        Number of all records.
     linked
        Number of records linked with schedule.
     skipped_not_in_service
        Number of records of vehicles not in service.
     skipped_unparsable
        Number of unparsable records.
     skipped_unlinked
        Number of records without schedule match.
     skipped_unusable
        Number of records with missing or invalid data.
    """
    def __init__(self):
        self.total = 0
        self.linked = 0
        self.skipped_not_in_service = 0
        self.skipped_unparsable = 0
        self.skipped_unlinked = 0
        self.skipped_unusable = 0


    def skip(self, reason):
        """
        Count skipped record.

        :Parameters:
         reason
            Skip reason.
        """
        attr = 'skipped_' + reason
        n = getattr(self, attr) + 1
        setattr(self, attr, n)
        if n == 1:
            log.warning('record skipped, reason: {}'.format(reason))


    @property
    def linked_ratio(self):
        """
        Ratio of records linked with schedule.
        """
        return self.linked / self.total if self.total else None


    def as_dict(self):
        return dict(vars(self))



class Schedule(object):
    """
    Static schedule.

    Scheduled departure times are looked up by service day, course and
    stop.

    :Attributes:
     tz
        Time zone of service days.
     entries
        Mapping of (service day, course, stop) to scheduled departure.
    """
    def __init__(self, tz=UTC):
        self.tz = tz
        self.entries = {}


    def __len__(self):
        return len(self.entries)


    def add(self, entry):
        """
        Add schedule entry.

        :Parameters:
         entry
            Schedule entry.
        """
        key = entry.service_date, entry.course, entry.stop
        if key in self.entries:
            raise InputError('Duplicate schedule entry for course {} at stop {}'
                ' on {}'.format(entry.course, entry.stop, entry.service_date))
        self.entries[key] = entry.sched_departure


    def lookup(self, course, stop, departure):
        """
        Find scheduled departure of a course at a stop.

        The schedule of service day of real departure is searched first,
        then previous and next service day. If there is no match, then
        ``None`` is returned.

        :Parameters:
         course
            Vehicle course.
         stop
            Stop id.
         departure
            Real departure time.
        """
        day = service_date(departure, self.tz)
        one = datetime.timedelta(days=1)
        for d in (day, day - one, day + one):
            value = self.entries.get((d, course, stop))
            if value is not None:
                return value
        return None



def _token(value):
    return None if value is None else str(value)


def _time(value):
    return None if value is None else parse_time(value)


def parse_record(line):
    """
    Parse vehicle location record from a line of JSON Lines file.

    `ValueError` is raised if the record cannot be parsed.

    :Parameters:
     line
        Line of text.
    """
    try:
        data = json.loads(line)
        status = data.get('status', IN_SERVICE)
        if status not in (IN_SERVICE, NOT_IN_SERVICE):
            raise ValueError('Unknown vehicle status {!r}'.format(status))
        lat, lon = data.get('lat'), data.get('lon')
        return RawLocationRecord(
            parse_time(data['event_time']),
            _token(data.get('vehicle')),
            _token(data.get('line')),
            _token(data.get('course')),
            None if lat is None else float(lat),
            None if lon is None else float(lon),
            _token(data.get('curr_stop')),
            _token(data.get('prev_stop')),
            _time(data.get('real_dep_curr')),
            _time(data.get('real_dep_prev')),
            status,
        )
    except (KeyError, TypeError, AttributeError, ValueError) as ex:
        raise ValueError('Cannot parse record: {}'.format(ex))


def format_record(record):
    """
    Format vehicle location record as line of JSON Lines file.

    :Parameters:
     record
        Vehicle location record.
    """
    data = record._asdict()
    for k in ('event_time', 'real_dep_curr', 'real_dep_prev'):
        if data[k] is not None:
            data[k] = fmt_time(data[k])
    return json.dumps(data, sort_keys=True)


def in_bbox(lat, lon, bbox):
    """
    Check if position is within bounding box.

    :Parameters:
     lat
        Latitude.
     lon
        Longitude.
     bbox
        Bounding box (min lon, min lat, max lon, max lat).
    """
    if lat is None or lon is None:
        return False
    return bbox[0] <= lon <= bbox[2] and bbox[1] <= lat <= bbox[3]


def link(record, schedule, bbox=None):
    """
    Link vehicle location record with static schedule.

    Tuple (snapshot, None) is returned for linked record, otherwise tuple
    (None, skip reason).

    :Parameters:
     record
        Vehicle location record.
     schedule
        Static schedule.
     bbox
        Optional bounding box of valid vehicle positions.
    """
    r = record
    if r.status == NOT_IN_SERVICE:
        return None, NOT_IN_SERVICE_REASON
    if bbox is not None and not in_bbox(r.lat, r.lon, bbox):
        return None, UNUSABLE
    if r.course is None or r.real_dep_curr is None:
        return None, UNUSABLE
    try:
        curr = stop_id(r.curr_stop)
        prev = stop_id(r.prev_stop)
    except ValueError:
        return None, UNUSABLE

    sched_curr = schedule.lookup(r.course, curr, r.real_dep_curr)
    if sched_curr is None:
        return None, UNLINKED
    sched_prev = None
    if r.real_dep_prev is not None:
        sched_prev = schedule.lookup(r.course, prev, r.real_dep_prev)

    snapshot = VehicleSnapshot(
        event_time=r.event_time, line=r.line, course=r.course, lat=r.lat,
        lon=r.lon, curr_stop=curr, prev_stop=prev,
        real_dep_curr=r.real_dep_curr, sched_dep_curr=sched_curr,
        real_dep_prev=r.real_dep_prev, sched_dep_prev=sched_prev,
        in_service=True, vehicle=r.vehicle,
    )
    try:
        validate(snapshot)
    except ValueError:
        return None, UNUSABLE
    return snapshot, None


def link_records(records, schedule, stats, bbox=None):
    """
    Link stream of vehicle location records with static schedule.

    :Parameters:
     records
        Iterator of vehicle location records.
     schedule
        Static schedule.
     stats
        Ingestion statistics to update.
     bbox
        Optional bounding box of valid vehicle positions.
    """
    for record in records:
        stats.total += 1
        snapshot, reason = link(record, schedule, bbox)
        if snapshot is None:
            stats.skip(reason)
        else:
            stats.linked += 1
            yield snapshot


def read_lines(path):
    """
    Read non-empty lines of a file with their line numbers.

    Lines are not decoded, so decoding error of a line can be handled
    together with its parsing error.

    :Parameters:
     path
        File path.
    """
    try:
        with open(path, 'rb') as f:
            for i, line in enumerate(f, 1):
                if line.strip():
                    yield i, line
    except OSError as ex:
        raise InputError('Cannot read file {}: {}'.format(path, ex.strerror))


def read_records(path, stats):
    """
    Read vehicle location records from JSON Lines file.

    Unparsable records are counted and skipped.

    :Parameters:
     path
        File path.
     stats
        Ingestion statistics to update.
    """
    for i, line in read_lines(path):
        try:
            yield parse_record(line.decode('utf-8'))
        except ValueError as ex:
            stats.total += 1
            stats.skip(UNPARSABLE)
            log.debug('{}:{}: {}'.format(path, i, ex))


def replay(path, schedule, stats=None, bbox=None):
    """
    Replay vehicle location records file as stream of vehicle snapshots.

    The snapshots are generated in the file order, which is expected to
    follow event time of the records. The records are not sorted, a
    record older than the latest processed one by more than late
    tolerance is skipped by the engine, see `sdcd.engine.EngineConfig`.

    :Parameters:
     path
        Vehicle location records file path.
     schedule
        Static schedule.
     stats
        Ingestion statistics to update.
     bbox
        Optional bounding box of valid vehicle positions.
    """
    if stats is None:
        stats = IngestStats()
    records = read_records(path, stats)
    yield from link_records(records, schedule, stats, bbox)
    log.info('records: {}, linked: {}, not in service: {}, unlinked: {},'
        ' unparsable: {}, unusable: {}'.format(stats.total, stats.linked,
        stats.skipped_not_in_service, stats.skipped_unlinked,
        stats.skipped_unparsable, stats.skipped_unusable))


def parse_schedule_entry(line):
    """
    Parse schedule entry from a line of JSON Lines file.

    :Parameters:
     line
        Line of text.
    """
    try:
        data = json.loads(line)
        return ScheduleEntry(
            _token(data.get('line')),
            str(data['course']),
            stop_id(data['stop']),
            parse_time(data['sched_departure']),
            datetime.date.fromisoformat(data['service_date']),
        )
    except (KeyError, TypeError, AttributeError, ValueError) as ex:
        raise ValueError('Cannot parse schedule entry: {}'.format(ex))


def format_schedule_entry(entry):
    """
    Format schedule entry as line of JSON Lines file.

    :Parameters:
     entry
        Schedule entry.
    """
    data = entry._asdict()
    data['sched_departure'] = fmt_time(entry.sched_departure)
    data['service_date'] = entry.service_date.isoformat()
    return json.dumps(data, sort_keys=True)


def load_schedule(path, tz=UTC):
    """
    Load static schedule from JSON Lines file.

    `InputError` is raised on unparsable entry or duplicate entry.

    :Parameters:
     path
        Schedule file path.
     tz
        Time zone of service days.
    """
    schedule = Schedule(tz)
    for i, line in read_lines(path):
        try:
            schedule.add(parse_schedule_entry(line.decode('utf-8')))
        except ValueError as ex:
            raise InputError('{}:{}: {}'.format(path, i, ex))
    log.debug('schedule loaded from {}, entries: {}'.format(
        path, len(schedule)))
    return schedule


def load_stops(path):
    """
    Load stop positions from JSON Lines file.

    Mapping of stop id to (lat, lon) tuple is returned.

    :Parameters:
     path
        Stops file path.
    """
    stops = {}
    for i, line in read_lines(path):
        try:
            data = json.loads(line.decode('utf-8'))
            stops[stop_id(data['stop'])] = float(data['lat']), float(data['lon'])
        except (KeyError, TypeError, AttributeError, ValueError) as ex:
            raise InputError('{}:{}: cannot parse stop: {}'.format(path, i, ex))
    return stops


def format_stop(stop, position):
    """
    Format stop position as line of JSON Lines file.

    :Parameters:
     stop
        Stop id.
     position
        Tuple (lat, lon).
    """
    lat, lon = position
    return json.dumps({'stop': stop, 'lat': lat, 'lon': lon}, sort_keys=True)


def shuffle_preview(stream, mode, tz=UTC):
    """
    Count vehicle snapshots per detector key without running detectors.

    :Parameters:
     stream
        Iterator of vehicle snapshots.
     mode
        Keying mode.
     tz
        Time zone of hour of day.
    """
    counts = Counter()
    for snapshot in stream:
        try:
            counts[detector_id(snapshot, mode, tz)] += 1
        except ValueError:
            log.debug('snapshot without detector key skipped')
    return counts


# vim: sw=4:et:ai
