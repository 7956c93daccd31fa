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
Run configuration.

Run configuration binds source of vehicle snapshots, keying mode, signal
kind and change detector configuration of a streaming delay change
detection run. It is resolved from command line options, the output
directory falls back to ``SDCD_OUT`` environment variable.
"""

import logging
import os
import os.path
from collections import namedtuple

from .detector import DetectorConfig, check_config, detector_kinds
from .engine import KeyingMode, SignalKind
from .report import check_hours
from .util import get_tz

log = logging.getLogger('sdcd.config')

EMIT = ('detections', 'summary', 'geojson')
OUT_ENV = 'SDCD_OUT'

Source = namedtuple('Source', 'kind path schedule stops')
Source.__doc__ = """
Source of vehicle snapshots.

Source kind is ``replay`` for snapshot file with schedule file or
``synth`` for scenario specification file.
"""

RunConfig = namedtuple('RunConfig', 'source mode signal detector timezone'
    ' out_dir emit workers seed min_abs from_hour to_hour matrix')

class ConfigError(ValueError):
    """
    Invalid run configuration.
    """


def _enum(cls, value, name):
    try:
        return cls(value)
    except ValueError:
        raise ConfigError('Invalid {} {!r}, use one of: {}'.format(
            name, value, ', '.join(v.value for v in cls)))


def _file(fn, name):
    if not os.path.isfile(fn):
        raise ConfigError('{} file {} does not exist'.format(name, fn))
    return fn


def source_config(args):
    """
    Resolve source of vehicle snapshots.

    :Parameters:
     args
        Command line arguments.
    """
    replay = getattr(args, 'source', None)
    spec = getattr(args, 'spec', None)
    schedule = getattr(args, 'schedule', None)
    stops = getattr(args, 'stops', None)
    if bool(replay) == bool(spec):
        raise ConfigError('Specify exactly one source: snapshot file with'
            ' --source or scenario specification with --spec')
    if spec:
        return Source('synth', _file(spec, 'Scenario specification'), None,
            None)
    if not schedule:
        raise ConfigError('Schedule file required for snapshot file source')
    return Source('replay', _file(replay, 'Snapshot'),
        _file(schedule, 'Schedule'), stops and _file(stops, 'Stops'))


def emit_config(value):
    """
    Parse comma separated list of artifacts to emit.

    >>> sorted(emit_config('summary,geojson'))
    ['geojson', 'summary']

    :Parameters:
     value
        Comma separated list of artifacts.
    """
    if value is None:
        return frozenset(EMIT)
    items = frozenset(v.strip() for v in value.split(',') if v.strip())
    unknown = items - set(EMIT)
    if unknown or not items:
        raise ConfigError('Invalid artifacts {!r}, use: {}'.format(
            value, ','.join(EMIT)))
    return items


def out_dir(value, environ):
    """
    Resolve output directory and check it is writable.

    :Parameters:
     value
        Output directory option value.
     environ
        Environment variables.
    """
    path = value or environ.get(OUT_ENV) or '.'
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as ex:
        raise ConfigError('Cannot create output directory {}: {}'.format(
            path, ex))
    if not os.access(path, os.W_OK):
        raise ConfigError('Output directory {} not writable'.format(path))
    return path


def run_config(args, environ=None):
    """
    Resolve run configuration from command line arguments.

    `ConfigError` is raised on invalid configuration.

    :Parameters:
     args
        Command line arguments.
     environ
        Environment variables, ``os.environ`` by default.
    """
    if environ is None:
        environ = os.environ

    source = source_config(args)
    mode = _enum(KeyingMode, args.mode, 'keying mode')
    signal = _enum(SignalKind, args.signal, 'signal kind')

    detector = DetectorConfig(kind=args.detector, confidence=args.confidence,
        kswin_window=args.kswin_window, kswin_stat=args.kswin_stat)
    if detector.kind not in detector_kinds():
        raise ConfigError('Invalid detector {!r}, use one of: {}'.format(
            detector.kind, ', '.join(detector_kinds())))
    try:
        check_config(detector)
        get_tz(args.timezone)
        check_hours(args.from_hour, args.to_hour)
    except ValueError as ex:
        raise ConfigError(str(ex))

    workers = args.workers if args.workers is not None else os.cpu_count()
    if workers is None or workers < 1:
        raise ConfigError('Invalid number of workers {}'.format(args.workers))
    if args.min_abs is not None and args.min_abs < 0:
        raise ConfigError('Invalid detection value cutoff {}'
            .format(args.min_abs))

    config = RunConfig(source, mode, signal, detector, args.timezone,
        out_dir(args.out, environ), emit_config(args.emit), workers,
        args.seed, args.min_abs, args.from_hour, args.to_hour, args.matrix)
    log.debug('run configuration: {}'.format(config))
    return config


# vim: sw=4:et:ai
