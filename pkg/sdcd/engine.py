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
Streaming delay change detection engine.

Each delay observation is routed to a change detector identified by
detector key. Detectors are created lazily on first observation of a key.
The key identifies an edge of transport network (edge-based mode) or an
edge and hour of day (bin-based mode).
"""

import enum
import itertools
import logging
import operator
import zlib
from collections import namedtuple, Counter
from concurrent.futures import ProcessPoolExecutor

from .calc import UnusableRecordError, observe, hour_of
from .data import KEY_SEP, EMPTY_GRAPH, stop_id, extend_graph
from .detector import DetectorConfig, create_detector
from .util import get_tz

log = logging.getLogger('sdcd.engine')

# late record tolerance in seconds
LATE_TOLERANCE = 120

class KeyingMode(enum.Enum):
    EDGE = 'edge'
    EDGE_HOUR = 'bin'


class SignalKind(enum.Enum):
    DELAY = 'delay'
    DELTA_DELAY = 'delta'


class Direction(enum.Enum):
    INCREASE = 'increase'
    REDUCTION = 'reduction'


class DetectorKey(namedtuple('DetectorKey', 'curr prev hour')):
    """
    Detector key.

    The hour is ``None`` for edge-based detector keys.
    """
    __slots__ = ()

    def __str__(self):
        items = [self.curr, self.prev]
        if self.hour is not None:
            items.append('{:02d}'.format(self.hour))
        return KEY_SEP.join(items)


def parse_key(token):
    """
    Parse detector key token.

    >>> parse_key('2002|2001|08')
    DetectorKey(curr='2002', prev='2001', hour=8)

    :Parameters:
     token
        Detector key token.
    """
    items = token.split(KEY_SEP)
    if len(items) not in (2, 3) or not all(items):
        raise ValueError('Invalid detector key {!r}'.format(token))
    hour = int(items[2]) if len(items) == 3 else None
    if hour is not None and not 0 <= hour < 24:
        raise ValueError('Invalid detector key hour {!r}'.format(token))
    return DetectorKey(items[0], items[1], hour)


EngineConfig = namedtuple('EngineConfig',
    'mode signal detector timezone late_tolerance',
    defaults=(KeyingMode.EDGE, SignalKind.DELAY, DetectorConfig(), 'UTC',
        LATE_TOLERANCE))
EngineConfig.__doc__ = """
Engine configuration.

Time zone is IANA time zone name used to determine hour of day of
observations.
"""

DetectionEvent = namedtuple('DetectionEvent', 'key detector signal'
    ' event_time value pre_mean post_mean direction course lat lon hour seq')
DetectionEvent.__doc__ = """
Detected delay change.

The value is the signal value, which completed the change. The location is
position of destination stop of the edge. The sequence number is position
of the triggering record in the input stream.
"""


def detector_id(snapshot, mode, tz):
    """
    Get detector key of vehicle snapshot.

    :Parameters:
     snapshot
        Vehicle snapshot.
     mode
        Keying mode.
     tz
        Time zone of hour of day.
    """
    hour = hour_of(snapshot.event_time, tz) \
        if mode == KeyingMode.EDGE_HOUR else None
    return DetectorKey(stop_id(snapshot.curr_stop), stop_id(snapshot.prev_stop),
        hour)


def shard(key, n):
    """
    Get shard number of detector key.

    :Parameters:
     key
        Detector key.
     n
        Number of shards.
    """
    return zlib.crc32(str(key).encode()) % n


class DetectorRegistry(object):
    """
    Registry of change detectors.

    :Attributes:
     config
        Configuration of created detectors.
     detectors
        Mapping of detector key to change detector.
    """
    def __init__(self, config):
        self.config = config
        self.detectors = {}


    @property
    def created_count(self):
        return len(self.detectors)


    def get(self, key):
        """
        Get change detector for a key, create it if it does not exist.

        :Parameters:
         key
            Detector key.
        """
        detector = self.detectors.get(key)
        if detector is None:
            detector = self.detectors[key] = create_detector(self.config)
            log.debug('detector {} created for key {}'.format(
                self.config.kind, key))
        return detector



class EngineStats(object):
    """
    Engine statistics.

    :Attributes:
     seen
        Number of records received.
     processed
        Number of records fed into detectors.
     skipped_late
        Number of records skipped as late.
     skipped_unusable
        Number of records, for which signal value cannot be calculated.
     skipped_not_in_service
        Number of records of vehicles not in service.
     detectors
        Number of created detectors.
     key_counts
        Number of observations per detector key.
     hourly
        Number of processed records per local date and hour.
     graph
        Transport network graph of processed records.
    """
    def __init__(self):
        self.seen = 0
        self.processed = 0
        self.skipped_late = 0
        self.skipped_unusable = 0
        self.skipped_not_in_service = 0
        self.detectors = 0
        self.key_counts = Counter()
        self.hourly = Counter()
        self.graph = EMPTY_GRAPH


    def merge(self, other):
        """
        Merge statistics of records processed by another engine.

        Counts of received and skipped records are added, the graphs are
        joined.

        :Parameters:
         other
            Engine statistics.
        """
        self.seen += other.seen
        self.processed += other.processed
        self.skipped_late += other.skipped_late
        self.skipped_unusable += other.skipped_unusable
        self.skipped_not_in_service += other.skipped_not_in_service
        self.detectors += other.detectors
        self.key_counts.update(other.key_counts)
        self.hourly.update(other.hourly)
        self.graph = self.graph._replace(
            stops=self.graph.stops | other.graph.stops,
            edges=self.graph.edges | other.graph.edges)


    def daily(self):
        """
        Get number of processed records per local date.
        """
        counts = Counter()
        for (date, hour), n in self.hourly.items():
            counts[date] += n
        return counts



class Engine(object):
    """
    Streaming delay change detection engine.

    :Attributes:
     config
        Engine configuration.
     tz
        Time zone of hour of day of observations.
     stops
        Mapping of stop id to its position (lat, lon).
     registry
        Detector registry.
     stats
        Engine statistics.
    """
    def __init__(self, config, stops=None):
        self.config = config
        self.tz = get_tz(config.timezone)
        self.stops = stops or {}
        self.registry = DetectorRegistry(config.detector)
        self.stats = EngineStats()
        self._latest = None


    def process(self, snapshot):
        """
        Process vehicle snapshot.

        Detection event is returned if the snapshot completes a delay
        change, otherwise ``None``.

        :Parameters:
         snapshot
            Vehicle snapshot.
        """
        seq = self.stats.seen
        if self.admit(snapshot):
            return self.feed(seq, snapshot)


    def admit(self, snapshot):
        """
        Check if vehicle snapshot shall be processed.

        Snapshots of vehicles not in service and snapshots older than
        the latest admitted snapshot by more than late tolerance are
        counted and skipped.

        :Parameters:
         snapshot
            Vehicle snapshot.
        """
        stats = self.stats
        stats.seen += 1
        if snapshot.in_service is False:
            stats.skipped_not_in_service += 1
            return False
        t = snapshot.event_time
        if t is None:
            stats.skipped_unusable += 1
            return False
        if self._latest is not None \
                and (self._latest - t).total_seconds() > self.config.late_tolerance:
            stats.skipped_late += 1
            if stats.skipped_late == 1:
                log.warning('late record skipped, event time {}'.format(t))
            return False
        if self._latest is None or t > self._latest:
            self._latest = t
        return True


    def feed(self, seq, snapshot):
        """
        Feed signal value of admitted vehicle snapshot to its change
        detector.

        :Parameters:
         seq
            Sequence number of the snapshot.
         snapshot
            Vehicle snapshot.
        """
        stats = self.stats
        try:
            key = detector_id(snapshot, self.config.mode, self.tz)
            obs = observe(snapshot, self.tz)
        except (UnusableRecordError, ValueError) as ex:
            stats.skipped_unusable += 1
            log.debug('unusable record {}: {}'.format(seq, ex))
            return None

        value = obs.d if self.config.signal == SignalKind.DELAY else obs.delta_d
        if value is None:
            stats.skipped_unusable += 1
            return None

        detector = self.registry.get(key)
        detected = detector.add_value(value)

        stats.processed += 1
        stats.key_counts[key] += 1
        local = snapshot.event_time.astimezone(self.tz)
        stats.hourly[local.date(), local.hour] += 1
        stats.graph = extend_graph(stats.graph, snapshot)
        stats.detectors = self.registry.created_count

        if not detected:
            return None

        pre, post = detector.pre_post_means()
        lat, lon = self.stops.get(key.curr, (None, None))
        direction = Direction.INCREASE if post > pre else Direction.REDUCTION
        return DetectionEvent(key, detector.kind, self.config.signal,
            snapshot.event_time, value, pre, post, direction, snapshot.course,
            lat, lon, obs.hour, seq)



def run(engine, source):
    """
    Process stream of vehicle snapshots and generate detection events.

    :Parameters:
     engine
        Streaming delay change detection engine.
     source
        Iterator of vehicle snapshots ordered by event time.
    """
    for snapshot in source:
        event = engine.process(snapshot)
        if event is not None:
            yield event
    s = engine.stats
    log.info('records: {}, processed: {}, late: {}, unusable: {},'
        ' detectors: {}'.format(s.seen, s.processed, s.skipped_late,
        s.skipped_unusable, s.detectors))


def _run_shard(config, stops, items):
    engine = Engine(config, stops)
    events = [e for e in (engine.feed(seq, s) for seq, s in items)
        if e is not None]
    return events, engine.stats


def run_sharded(config, source, workers, stops=None):
    """
    Process stream of vehicle snapshots with detectors partitioned by
    detector key between worker processes.

    List of detection events ordered by position of triggering snapshot in
    the stream and engine statistics are returned. The events are the same
    as the events of sequential run.

    :Parameters:
     config
        Engine configuration.
     source
        Iterator of vehicle snapshots ordered by event time.
     workers
        Number of worker processes.
     stops
        Mapping of stop id to its position.
    """
    engine = Engine(config, stops)
    if workers <= 1:
        events = list(run(engine, source))
        return events, engine.stats

    shards = [[] for i in range(workers)]
    for snapshot in source:
        seq = engine.stats.seen
        if not engine.admit(snapshot):
            continue
        try:
            key = detector_id(snapshot, config.mode, engine.tz)
        except ValueError:
            engine.stats.skipped_unusable += 1
            continue
        shards[shard(key, workers)].append((seq, snapshot))

    log.debug('shard sizes: {}'.format([len(s) for s in shards]))
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(_run_shard, config, engine.stops, items)
            for items in shards if items]
        results = [f.result() for f in futures]

    stats = engine.stats
    for _, s in results:
        stats.merge(s)
    events = sorted(itertools.chain.from_iterable(e for e, _ in results),
        key=operator.attrgetter('seq'))
    log.info('records: {}, processed: {}, late: {}, unusable: {},'
        ' detectors: {}, workers: {}'.format(stats.seen, stats.processed,
        stats.skipped_late, stats.skipped_unusable, stats.detectors, workers))
    return events, stats


# vim: sw=4:et:ai
