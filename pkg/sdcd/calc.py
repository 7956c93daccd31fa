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
Functions to calculate

- delay of a vehicle at a stop
- delay change along an edge of transport network
- hour of day and service day of a timestamp
"""

import datetime

from .data import DelayObservation, edge

# service day starts at 03:00 local time
SERVICE_DAY_START = datetime.timedelta(hours=3)

class UnusableRecordError(ValueError):
    """
    Vehicle snapshot cannot be used to calculate a delay signal.
    """


def _seconds(real, sched, stop):
    if real is None or sched is None:
        raise UnusableRecordError('Departure time missing at {} stop'
            .format(stop))
    return int((real - sched).total_seconds())


def delay(snapshot):
    """
    Calculate delay of a vehicle at current stop in seconds.

    Positive value means late departure, negative value early departure.

    :Parameters:
     snapshot
        Vehicle snapshot.
    """
    if snapshot.in_service is False:
        raise UnusableRecordError('Vehicle not in service')
    return _seconds(snapshot.real_dep_curr, snapshot.sched_dep_curr, 'current')


def delay_at_prev(snapshot):
    """
    Calculate delay of a vehicle at previous stop in seconds.

    :Parameters:
     snapshot
        Vehicle snapshot.
    """
    return _seconds(snapshot.real_dep_prev, snapshot.sched_dep_prev, 'previous')


def delta_delay(snapshot):
    """
    Calculate delay change of a vehicle course along an edge in seconds.

    Positive value means the delay grew between previous and current stop.

    :Parameters:
     snapshot
        Vehicle snapshot.
    """
    if snapshot.course is None:
        raise UnusableRecordError('Vehicle course missing')
    return delay(snapshot) - delay_at_prev(snapshot)


def hour_of(ts, tz):
    """
    Get hour of day of a timestamp in a time zone.

    >>> from sdcd.util import UTC, parse_time
    >>> hour_of(parse_time('2021-12-18T08:59:59Z'), UTC)
    8

    :Parameters:
     ts
        Timestamp with time zone.
     tz
        Time zone.
    """
    return ts.astimezone(tz).hour


def service_date(ts, tz):
    """
    Get service day of a timestamp in a time zone.

    Service day starts at 03:00 local time, so departures after midnight
    belong to previous day.

    >>> from sdcd.util import UTC, parse_time
    >>> service_date(parse_time('2021-12-19T02:59:00Z'), UTC)
    datetime.date(2021, 12, 18)
    >>> service_date(parse_time('2021-12-19T03:00:00Z'), UTC)
    datetime.date(2021, 12, 19)

    :Parameters:
     ts
        Timestamp with time zone.
     tz
        Time zone.
    """
    return (ts.astimezone(tz) - SERVICE_DAY_START).date()


def observe(snapshot, tz):
    """
    Create delay observation for a vehicle snapshot.

    Delay change is set to ``None`` if it cannot be calculated. The
    `UnusableRecordError` exception is raised if delay at current stop
    cannot be calculated.

    :Parameters:
     snapshot
        Vehicle snapshot.
     tz
        Time zone used to determine hour of the observation.
    """
    s = snapshot
    try:
        e = edge(s.prev_stop, s.curr_stop)
    except ValueError as ex:
        raise UnusableRecordError(str(ex))
    d = delay(s)
    try:
        dd = delta_delay(s)
    except UnusableRecordError:
        dd = None
    return DelayObservation(e, s.event_time, s.course, d, dd,
        hour_of(s.event_time, tz))


# vim: sw=4:et:ai
