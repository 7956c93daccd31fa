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
Synthetic public transport scenario generator.

A scenario is a city with stops placed at random within a bounding box
and lines running vehicle courses along their stop sequences. Each line
is a loop, but a course reports departures from its stop sequence only,
so every course departs every stop once.

Delay of a course at its ``j``-th stop is

    d_j = round(propagation * d_{j-1} + e_j + p_j)

where ``e_j`` is Gaussian noise and ``p_j`` is delay added by
perturbations active on the edge leading to the stop at scheduled
departure time. Perturbations are known in advance and reported as
ground truth.

Scenario specification is YAML document, i.e.::

    seed: 42
    start_date: 2021-12-18
    days: 4
    service: {from: '05:00', to: '23:00'}
    headway: 600
    noise_std: 20
    stops: {count: 50}
    lines: {count: 8, length: [8, 12]}
    perturbations:
      - {line: L1, position: 3, kind: step, delay: 120, start_day: 2}
"""

import datetime
import enum
import heapq
import json
import logging
import math
import operator
from collections import namedtuple, Counter

import numpy as np
import yaml

from .data import Edge
from .ingest import IN_SERVICE, IngestStats, RawLocationRecord, \
    Schedule, ScheduleEntry, link_records
from .util import UTC, fmt_time, get_tz

log = logging.getLogger('sdcd.simulation')

# average vehicle speed [m/s] and dwell time at a stop [s]
SPEED = 7.0
DWELL = 20
MIN_RUN_TIME = 30
EARTH_RADIUS = 6371000.0

BBOX = (21.00, 52.20, 21.08, 52.25)

class ScenarioError(ValueError):
    """
    Invalid scenario specification.
    """


class PerturbationKind(enum.Enum):
    STEP = 'step'
    HOURLY = 'hourly'


ScenarioSpec = namedtuple('ScenarioSpec', 'seed start_date days timezone'
    ' service_from service_to headway noise_std propagation report_interval'
    ' stop_count stop_seed bbox line_count line_length sequences'
    ' perturbations')
ScenarioSpec.__doc__ = """
Scenario specification.

Service and perturbation times are minutes since local midnight.
"""

PerturbationSpec = namedtuple('PerturbationSpec', 'edge line position kind'
    ' delay start_day end_day start end')
Line = namedtuple('Line', 'line stops')
Course = namedtuple('Course', 'line course vehicle date stops departures')
GroundTruth = namedtuple('GroundTruth', 'edge kind delay start end')


def parse_minutes(value, name):
    """
    Parse time of day into minutes since midnight.

    Time of day is ``HH:MM`` string or number of minutes (YAML parses
    unquoted ``HH:MM`` as sexagesimal number of minutes).

    >>> parse_minutes('08:30', 'from')
    510
    >>> parse_minutes(510, 'from')
    510

    :Parameters:
     value
        Time of day.
     name
        Name of the specification field.
    """
    try:
        if isinstance(value, str):
            h, m = map(int, value.split(':'))
            if not 0 <= m < 60:
                raise ValueError()
            value = h * 60 + m
        elif not isinstance(value, int) or isinstance(value, bool):
            raise ValueError()
    except ValueError:
        raise ScenarioError('Invalid time of day {!r} of {}'.format(
            value, name))
    if not 0 <= value <= 1440:
        raise ScenarioError('Time of day {!r} of {} out of range'.format(
            value, name))
    return value


def _number(doc, key, default, cls=int, low=None, high=None):
    value = doc.get(key, default)
    try:
        if isinstance(value, bool) or value is None:
            raise TypeError()
        value = cls(value)
    except (TypeError, ValueError):
        raise ScenarioError('Invalid value {!r} of {}'.format(value, key))
    if low is not None and value < low or high is not None and value > high:
        raise ScenarioError('Value {!r} of {} out of range'.format(value, key))
    return value


def _section(doc, key):
    value = doc.get(key) or {}
    if not isinstance(value, dict):
        raise ScenarioError('Section {} shall be a mapping'.format(key))
    return value


def _date(value):
    if isinstance(value, datetime.date):
        return value
    try:
        return datetime.date.fromisoformat(str(value))
    except ValueError:
        raise ScenarioError('Invalid start date {!r}'.format(value))


def parse_perturbation(doc, days):
    """
    Parse perturbation specification.

    Perturbation edge is specified with a pair of stop ids, or with line
    and position of the edge in the line (1 for edge from first to second
    stop of the line).

    :Parameters:
     doc
        Perturbation specification mapping.
     days
        Number of days of scenario.
    """
    if not isinstance(doc, dict):
        raise ScenarioError('Perturbation shall be a mapping')

    edge = doc.get('edge')
    line = doc.get('line')
    position = None
    if edge is not None:
        if not isinstance(edge, (list, tuple)) or len(edge) != 2:
            raise ScenarioError('Perturbation edge shall be pair of stops')
        edge = Edge(str(edge[0]), str(edge[1]))
    elif line is not None:
        line = str(line)
        position = _number(doc, 'position', None, low=1)
    else:
        raise ScenarioError('Perturbation edge or line required')

    try:
        kind = PerturbationKind(doc.get('kind', 'step'))
    except ValueError:
        raise ScenarioError('Invalid perturbation kind {!r}'.format(
            doc.get('kind')))

    delay = _number(doc, 'delay', None, float)
    start_day = _number(doc, 'start_day', 1, low=1, high=days)
    end_day = _number(doc, 'end_day', days, low=start_day, high=days)

    if kind == PerturbationKind.HOURLY and ('from' not in doc or 'to' not in doc):
        raise ScenarioError('Hourly perturbation requires from and to times')
    start = parse_minutes(doc.get('from', 0), 'perturbation from')
    end = parse_minutes(doc.get('to', 1440), 'perturbation to')
    if kind == PerturbationKind.HOURLY and start >= end:
        raise ScenarioError('Hourly perturbation requires from before to')

    return PerturbationSpec(edge, line, position, kind, delay, start_day,
        end_day, start, end)


def parse_spec(doc):
    """
    Parse scenario specification document.

    :Parameters:
     doc
        Scenario specification mapping (i.e. loaded from YAML file).
    """
    if not isinstance(doc, dict):
        raise ScenarioError('Scenario specification shall be a mapping')

    days = _number(doc, 'days', 1, low=1)
    timezone = str(doc.get('timezone', 'UTC'))
    try:
        get_tz(timezone)
    except ValueError as ex:
        raise ScenarioError(str(ex))

    service = _section(doc, 'service')
    service_from = parse_minutes(service.get('from', '05:00'), 'service from')
    service_to = parse_minutes(service.get('to', '23:00'), 'service to')
    if service_from >= service_to:
        raise ScenarioError('Service start shall be before service end')

    stops = _section(doc, 'stops')
    stop_count = _number(stops, 'count', 50, low=2)
    bbox = stops.get('bbox', BBOX)
    try:
        bbox = tuple(float(v) for v in bbox)
    except (TypeError, ValueError):
        raise ScenarioError('Invalid bounding box {!r}'.format(bbox))
    if len(bbox) != 4 or bbox[0] >= bbox[2] or bbox[1] >= bbox[3]:
        raise ScenarioError('Invalid bounding box {!r}'.format(bbox))

    lines = _section(doc, 'lines')
    sequences = lines.get('sequences')
    if sequences is not None:
        if not isinstance(sequences, list) or not sequences:
            raise ScenarioError('Line sequences shall be non-empty list')
        sequences = tuple(tuple(str(s) for s in seq) for seq in sequences)
        line_count = len(sequences)
    else:
        line_count = _number(lines, 'count', 8, low=1)
    length = lines.get('length', (8, 12))
    if isinstance(length, int):
        length = length, length
    try:
        length = tuple(int(v) for v in length)
    except (TypeError, ValueError):
        raise ScenarioError('Invalid line length {!r}'.format(length))
    if len(length) != 2 or not 2 <= length[0] <= length[1] <= stop_count:
        raise ScenarioError('Invalid line length {!r}'.format(length))

    perturbations = doc.get('perturbations') or []
    if not isinstance(perturbations, list):
        raise ScenarioError('Perturbations shall be a list')

    return ScenarioSpec(
        seed=_number(doc, 'seed', 0, low=0),
        start_date=_date(doc.get('start_date', '2021-12-18')),
        days=days,
        timezone=timezone,
        service_from=service_from,
        service_to=service_to,
        headway=_number(doc, 'headway', 600, low=1),
        noise_std=_number(doc, 'noise_std', 20.0, float, low=0),
        propagation=_number(doc, 'propagation', 0.5, float, low=0, high=0.99),
        report_interval=_number(doc, 'report_interval', 0, low=0),
        stop_count=stop_count,
        stop_seed=_number(stops, 'seed', 0, low=0),
        bbox=bbox,
        line_count=line_count,
        line_length=length,
        sequences=sequences,
        perturbations=tuple(parse_perturbation(p, days) for p in perturbations),
    )


def load_spec(path, seed=None):
    """
    Load scenario specification from YAML file.

    :Parameters:
     path
        Scenario specification file path.
     seed
        Random generator seed overriding the seed of the specification.
    """
    try:
        with open(path, encoding='utf-8') as f:
            doc = yaml.safe_load(f)
    except OSError as ex:
        raise ScenarioError('Cannot read scenario specification {}: {}'
            .format(path, ex.strerror))
    except yaml.YAMLError as ex:
        raise ScenarioError('Cannot parse scenario specification {}: {}'
            .format(path, ex))
    spec = parse_spec(doc)
    if seed is not None:
        spec = spec._replace(seed=seed)
    return spec


def distance(p1, p2):
    """
    Calculate great circle distance in meters between two positions.

    :Parameters:
     p1
        Position (lat, lon).
     p2
        Position (lat, lon).
    """
    lat1, lon1, lat2, lon2 = map(math.radians, p1 + p2)
    a = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) \
        * math.sin((lon2 - lon1) / 2) ** 2
    return 2 * EARTH_RADIUS * math.asin(math.sqrt(a))


class Scenario(object):
    """
    Synthetic public transport scenario.

    :Attributes:
     spec
        Scenario specification.
     tz
        Time zone of the scenario.
     stops
        Mapping of stop id to position (lat, lon).
     lines
        List of lines.
     edges
        Set of edges of stop sequences of lines.
     perturbations
        List of perturbations as tuples (edge, specification).
     truth
        List of time intervals of delay perturbations, ground truth of
        the scenario.
     courses
        List of vehicle courses.
     ledger
        Number of generated records per edge.
    """
    def __init__(self, spec):
        self.spec = spec
        self.tz = get_tz(spec.timezone)
        self.stops = self._layout()
        self.lines = self._lines()
        self.edges = frozenset(
            Edge(a, b) for l in self.lines for a, b in zip(l.stops, l.stops[1:])
        )
        self.perturbations = [
            (self._edge(p), p) for p in spec.perturbations
        ]
        self.truth = [t for e, p in self.perturbations
            for t in self._truth(e, p)]
        self.courses = list(self._courses())
        self.ledger = Counter()
        log.debug('scenario: stops {}, lines {}, courses {}'.format(
            len(self.stops), len(self.lines), len(self.courses)))


    def _layout(self):
        spec = self.spec
        rng = np.random.default_rng(spec.stop_seed)
        lon = rng.uniform(spec.bbox[0], spec.bbox[2], spec.stop_count)
        lat = rng.uniform(spec.bbox[1], spec.bbox[3], spec.stop_count)
        return {
            str(1001 + i): (round(float(lat[i]), 6), round(float(lon[i]), 6))
            for i in range(spec.stop_count)
        }


    def _lines(self):
        spec = self.spec
        if spec.sequences is not None:
            lines = []
            for i, seq in enumerate(spec.sequences, 1):
                unknown = [s for s in seq if s not in self.stops]
                if unknown:
                    raise ScenarioError('Unknown stops {} of line L{}'
                        .format(', '.join(unknown), i))
                if len(seq) < 2 or len(set(seq)) != len(seq):
                    raise ScenarioError('Line L{} shall visit at least two'
                        ' distinct stops'.format(i))
                lines.append(Line('L{}'.format(i), seq))
            return lines

        rng = np.random.default_rng([spec.seed, spec.stop_seed])
        ids = sorted(self.stops)
        lo, hi = spec.line_length
        lines = []
        for i in range(1, spec.line_count + 1):
            n = int(rng.integers(lo, hi + 1))
            seq = tuple(ids[k] for k in rng.choice(len(ids), n, replace=False))
            lines.append(Line('L{}'.format(i), seq))
        return lines


    def _edge(self, p):
        if p.edge is not None:
            edge = p.edge
        else:
            line = next((l for l in self.lines if l.line == p.line), None)
            if line is None:
                raise ScenarioError('Unknown perturbation line {}'.format(p.line))
            if p.position >= len(line.stops):
                raise ScenarioError('Perturbation position {} out of line {}'
                    .format(p.position, p.line))
            edge = Edge(*line.stops[p.position - 1:p.position + 1])
        if edge not in self.edges:
            loop = next((l.line for l in self.lines
                if edge == Edge(l.stops[-1], l.stops[0])), None)
            if loop is not None:
                raise ScenarioError('Perturbation edge {}->{} closes loop of'
                    ' line {}, courses do not report departures on the edge'
                    .format(edge.prev, edge.curr, loop))
            raise ScenarioError('Perturbation edge {}->{} not in any line'
                .format(*edge))
        return edge


    def _local(self, day, minutes):
        """
        Get UTC time of local time of a scenario day.

        :Parameters:
         day
            Day number, starting with 1.
         minutes
            Minutes since local midnight.
        """
        date = self.spec.start_date + datetime.timedelta(days=day - 1)
        dt = datetime.datetime(date.year, date.month, date.day, tzinfo=self.tz)
        return (dt + datetime.timedelta(minutes=minutes)).astimezone(UTC)


    def _truth(self, edge, p):
        if p.kind == PerturbationKind.STEP:
            intervals = [(self._local(p.start_day, p.start),
                self._local(p.end_day, p.end))]
        else:
            intervals = [(self._local(d, p.start), self._local(d, p.end))
                for d in range(p.start_day, p.end_day + 1)]
        return [GroundTruth(edge, p.kind, p.delay, s, e) for s, e in intervals]


    def added_delay(self, edge, t):
        """
        Get delay added by perturbations active on an edge at a time.

        :Parameters:
         edge
            Edge of transport network.
         t
            Scheduled departure time at destination stop of the edge.
        """
        return sum(g.delay for g in self.truth
            if g.edge == edge and g.start <= t < g.end)


    def run_time(self, prev, curr):
        """
        Get scheduled running time in seconds between two stops.
        """
        d = distance(self.stops[prev], self.stops[curr])
        return max(MIN_RUN_TIME, int(round(d / SPEED)) + DWELL)


    def _courses(self):
        spec = self.spec
        for day in range(1, spec.days + 1):
            date = spec.start_date + datetime.timedelta(days=day - 1)
            first = self._local(day, spec.service_from)
            last = self._local(day, spec.service_to)
            for line in self.lines:
                run = [self.run_time(a, b)
                    for a, b in zip(line.stops, line.stops[1:])]
                k = 0
                start = first
                while start < last:
                    times = [start]
                    for r in run:
                        times.append(times[-1] + datetime.timedelta(seconds=r))
                    course = '{}-{:%Y%m%d}-{:03d}'.format(line.line, date, k)
                    vehicle = '{}-{:02d}'.format(line.line, k % 100)
                    yield Course(line.line, course, vehicle, date, line.stops,
                        tuple(times))
                    k += 1
                    start = first + datetime.timedelta(seconds=k * spec.headway)


    def delays(self, course, day, index):
        """
        Calculate delays of a course at its stops.

        Departure of a vehicle from a stop is never earlier than one
        second after departure from previous stop.

        :Parameters:
         course
            Vehicle course.
         day
            Day number, starting with 1.
         index
            Number of the course within line and day.
        """
        spec = self.spec
        line_no = int(course.line[1:])
        n = len(course.stops)
        if spec.noise_std > 0:
            rng = np.random.default_rng([spec.seed, line_no, day, index])
            noise = rng.normal(0, spec.noise_std, n)
        else:
            noise = np.zeros(n)

        delays = [int(round(float(noise[0])))]
        for j in range(1, n):
            edge = Edge(course.stops[j - 1], course.stops[j])
            t = course.departures[j]
            value = spec.propagation * delays[-1] + float(noise[j]) \
                + self.added_delay(edge, t)
            gap = (t - course.departures[j - 1]).total_seconds()
            value = max(int(round(value)), delays[-1] - int(gap) + 1)
            delays.append(value)
        return delays


    def _course_records(self, course, day, index):
        spec = self.spec
        delays = self.delays(course, day, index)
        real = [t + datetime.timedelta(seconds=d)
            for t, d in zip(course.departures, delays)]
        stops = course.stops
        n = len(stops)
        for j in range(1, n):
            curr, prev = stops[j], stops[j - 1]
            record = RawLocationRecord(real[j], course.vehicle, course.line,
                course.course, *self.stops[curr], curr, prev, real[j],
                real[j - 1], IN_SERVICE)
            yield record
            if spec.report_interval == 0 or j == n - 1:
                continue

            p1, p2 = self.stops[curr], self.stops[stops[j + 1]]
            total = (real[j + 1] - real[j]).total_seconds()
            step = datetime.timedelta(seconds=spec.report_interval)
            t = real[j] + step
            while t < real[j + 1]:
                f = (t - real[j]).total_seconds() / total
                lat = round(p1[0] + (p2[0] - p1[0]) * f, 6)
                lon = round(p1[1] + (p2[1] - p1[1]) * f, 6)
                yield record._replace(event_time=t, lat=lat, lon=lon)
                t += step


    def records(self):
        """
        Generate vehicle location records of all courses ordered by event
        time.

        The dispatch ledger is recalculated.
        """
        self.ledger = Counter()
        index = Counter()
        sources = []
        for c in self.courses:
            day = (c.date - self.spec.start_date).days + 1
            k = index[c.line, day]
            index[c.line, day] += 1
            sources.append(self._course_records(c, day, k))

        for r in heapq.merge(*sources, key=operator.attrgetter('event_time')):
            self.ledger[Edge(r.prev_stop, r.curr_stop)] += 1
            yield r


    def schedule(self):
        """
        Generate schedule entries of all courses.
        """
        for c in self.courses:
            for stop, t in zip(c.stops, c.departures):
                yield ScheduleEntry(c.line, c.course, stop, t, c.date)


    def schedule_table(self):
        """
        Create static schedule of all courses.
        """
        schedule = Schedule(self.tz)
        for entry in self.schedule():
            schedule.add(entry)
        return schedule



def format_truth(truth):
    """
    Format ground truth interval as line of JSON Lines file.

    :Parameters:
     truth
        Ground truth interval of a perturbation.
    """
    return json.dumps({
        'prev': truth.edge.prev,
        'curr': truth.edge.curr,
        'kind': truth.kind.value,
        'delay': truth.delay,
        'start': fmt_time(truth.start),
        'end': fmt_time(truth.end),
    }, sort_keys=True)


def format_ledger(edge, count):
    """
    Format number of generated records of an edge as line of JSON Lines
    file.
    """
    return json.dumps({'prev': edge.prev, 'curr': edge.curr,
        'count': count}, sort_keys=True)


def generate(spec, stats=None):
    """
    Generate scenario stream of vehicle snapshots.

    Tuple of vehicle snapshots iterator and ground truth list is returned.
    The snapshots are linked with the scenario schedule in the same way as
    replayed vehicle location records.

    :Parameters:
     spec
        Scenario specification.
     stats
        Ingestion statistics to update.
    """
    scenario = Scenario(spec)
    if stats is None:
        stats = IngestStats()
    snapshots = link_records(scenario.records(), scenario.schedule_table(),
        stats)
    return snapshots, scenario.truth


# vim: sw=4:et:ai
