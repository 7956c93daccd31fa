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
SDCD data flow processing functions and coroutines.
"""

import logging
import os
from contextlib import contextmanager
from tempfile import mkstemp

log = logging.getLogger('sdcd.flow')

def coroutine(func):
    """
    Decorator for a coroutine function.

    Advances a coroutine to its first ``(yield)`` statement.
    """
    def start(*args, **kwargs):
        cr = func(*args, **kwargs)
        next(cr)
        return cr
    return start


def pipe(data, *gens):
    """
    Pipe data through list of generators.

    :Parameters:
     data
        Data to pipe through the generators.
     gens
        List of generators to process the data.
    """
    for g in gens:
        data = g(data)
    return data


def send(data, tc):
    """
    Send data from iterator to target coroutine.

    :Parameters:
     data
        Iterator of data to send.
     tc
        Coroutine to receive the data.
    """
    for v in data:
        tc.send(v)
    tc.close()


@coroutine
def lines(f, fmt):
    """
    Coroutine to receive a value, format it with function ``fmt`` and
    write it as a line into a file.

    :Parameters:
     f
        File object.
     fmt
        Function converting a value into a string.
    """
    while True:
        v = yield
        f.write(fmt(v))
        f.write('\n')


@contextmanager
def artifacts(path, *names):
    """
    Open files of run artifacts for writing.

    The artifacts are written into temporary files in the output directory
    and renamed to their names when the context exits without error. On
    error, the temporary files are removed.

    :Parameters:
     path
        Output directory.
     names
        Names of artifact files.
    """
    os.makedirs(path, exist_ok=True)
    files = []
    try:
        for n in names:
            fd, fn = mkstemp(prefix='.{}.'.format(n), dir=path)
            os.chmod(fn, 0o644)
            files.append((open(fd, 'w', encoding='utf-8', newline=''), fn, n))
        yield tuple(f for f, _, _ in files)
    except BaseException:
        for f, fn, _ in files:
            f.close()
            os.remove(fn)
        log.debug('artifacts removed: {}'.format(', '.join(names)))
        raise
    else:
        for f, fn, n in files:
            f.close()
            os.replace(fn, os.path.join(path, n))
        log.debug('artifacts written to {}: {}'.format(path, ', '.join(names)))


# vim: sw=4:et:ai
