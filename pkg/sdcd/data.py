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
Public transport network and vehicle location data records.
"""

from collections import namedtuple

# separator of stop identifiers in detector keys, not allowed in stop ids
KEY_SEP = '|'

def ntuple(name, fields):
    """
    Create a named tuple with all fields set to ``None`` by default.

    :Parameters:
     name
        Name of tuple.
     fields
        String containing space separated list of field names.
    """
    t = namedtuple(name, fields)
    t.__new__.__defaults__ = len(t._fields) * (None, )
    return t


# vehicle location record linked with schedule; departure times at current
# stop (most recently departed) and previous stop of a vehicle course
VehicleSnapshot = ntuple('VehicleSnapshot', 'event_time line course lat lon' \
        ' curr_stop prev_stop real_dep_curr sched_dep_curr real_dep_prev' \
        ' sched_dep_prev in_service vehicle')

Edge = namedtuple('Edge', 'prev curr')
DelayObservation = namedtuple('DelayObservation',
        'edge event_time course d delta_d hour')
TransportGraph = namedtuple('TransportGraph', 'stops edges')

EMPTY_GRAPH = TransportGraph(frozenset(), frozenset())


def stop_id(token):
    """
    Validate stop identifier token and return it as string.

    >>> stop_id(2002)
    '2002'

    :Parameters:
     token
        Stop identifier.
    """
    if token is None:
        raise ValueError('Stop identifier missing')
    token = str(token)
    if not token:
        raise ValueError('Empty stop identifier')
    if KEY_SEP in token:
        raise ValueError('Stop identifier {!r} contains {!r}'.format(
            token, KEY_SEP))
    return token


def edge(prev, curr):
    """
    Create directed edge between two stops.

    :Parameters:
     prev
        Stop departed first.
     curr
        Stop departed next.
    """
    prev = stop_id(prev)
    curr = stop_id(curr)
    if prev == curr:
        raise ValueError('Edge loop at stop {}'.format(prev))
    return Edge(prev, curr)


def validate(snapshot):
    """
    Check vehicle snapshot invariants.

    `ValueError` is raised with the reason if snapshot is invalid. Missing
    departure times are not checked here as they make a snapshot unusable
    for delay calculation only.

    :Parameters:
     snapshot
        Vehicle snapshot.
    """
    s = snapshot
    edge(s.prev_stop, s.curr_stop)
    if s.event_time is None:
        raise ValueError('Event time missing')
    if s.real_dep_curr is not None and s.event_time < s.real_dep_curr:
        raise ValueError('Event time before departure')
    pairs = ((s.real_dep_prev, s.real_dep_curr),
            (s.sched_dep_prev, s.sched_dep_curr))
    if any(p is not None and c is not None and p > c for p, c in pairs):
        raise ValueError('Departure at previous stop after current stop')
    return s


def extend_graph(graph, snapshot):
    """
    Add edge of vehicle snapshot to transport network graph.

    New graph is returned, the graph is returned unchanged if it contains
    the edge already.

    :Parameters:
     graph
        Transport network graph.
     snapshot
        Vehicle snapshot.
    """
    e = edge(snapshot.prev_stop, snapshot.curr_stop)
    if e in graph.edges:
        return graph
    return TransportGraph(graph.stops | set(e), graph.edges | {e})


# vim: sw=4:et:ai
