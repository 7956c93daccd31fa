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
SDCD utility functions.
"""

import string
from datetime import timezone as _timezone

from dateutil import tz
from dateutil.parser import isoparse

UTC = _timezone.utc

# RFC 3339 format of UTC timestamps used in all SDCD files
FMT_TIME = '%Y-%m-%dT%H:%M:%SZ'


class _Formatter(string.Formatter):
    """
    Formatter, which formats 'None' as empty string.
    """
    def format_field(self, value, fs):
        """
        Format null value as empty string. If value is not null, then
        render it using default method of the formatter.
        """
        if value is None:
            return ''
        else:
            return super(_Formatter, self).format_field(value, fs)


nformat = _Formatter().format


def fmt_time(dt):
    """
    Format timestamp as RFC 3339 UTC string with seconds precision.

    >>> from datetime import datetime
    >>> fmt_time(datetime(2021, 12, 18, 8, 15, 3, 500000, tzinfo=UTC))
    '2021-12-18T08:15:03Z'
    """
    return format(dt.astimezone(UTC), FMT_TIME)


def parse_time(s):
    """
    Parse RFC 3339 timestamp into UTC datetime truncated to seconds.

    Timestamps without time zone are assumed to be UTC.

    >>> parse_time('2021-12-18T09:15:03.9+01:00')
    datetime.datetime(2021, 12, 18, 8, 15, 3, tzinfo=datetime.timezone.utc)
    """
    dt = isoparse(s)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=UTC)
    return dt.astimezone(UTC).replace(microsecond=0)


def get_tz(name):
    """
    Get time zone object for IANA time zone name.

    `ValueError` is raised for unknown time zone.

    :Parameters:
     name
        Time zone name, i.e. `UTC`, `Europe/Warsaw`.
    """
    if name in ('UTC', 'Z'):
        return UTC
    value = tz.gettz(name)
    if value is None:
        raise ValueError('Unknown time zone: {}'.format(name))
    return value


# vim: sw=4:et:ai
