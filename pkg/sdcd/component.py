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
Component registry.

Classes declare the interface they realize with the `inject` decorator and
are found later with `query` or `find` using the injection parameters, i.e.
change detectors are registered with their kind::

    @inject(ChangeDetector, kind='adwin')
    class ADWIN(ChangeDetector):
        ...

    cls = find(ChangeDetector, kind='adwin')
"""

import itertools
import logging

ichain = itertools.chain.from_iterable

log = logging.getLogger('sdcd.component')

# interface -> list of (class, parameters)
_registry = {}

def inject(iface, **params):
    """
    Class decorator to declare interface realization.

    :Parameters:
     iface
        Interface realized by decorated class.
     params
        Injection parameters used to query the registry.
    """
    def f(cls):
        log.debug('inject interface {} for class {} with params {}'.format(
            iface.__name__, cls.__name__, params))
        _registry.setdefault(iface, []).append((cls, params))
        return cls

    return f


def _applies(p1, p2):
    """
    Check if all items of first dictionary are present in second one.

    :Parameters:
     p1
        Dictionary of query parameters.
     p2
        Dictionary of injection parameters.
    """
    return all(k in p2 and p2[k] == v for k, v in p1.items())


def query(iface=None, **params):
    """
    Get iterator of classes realizing an interface and matching injection
    parameters.

    All registered classes are considered if interface is not specified.

    :Parameters:
     iface
        Interface to look for.
     params
        Injection parameters to match.
    """
    if iface is None:
        data = ichain(_registry.values())
    else:
        data = _registry.get(iface, ())
    return (cls for cls, p in data if _applies(params, p))


def find(iface, **params):
    """
    Find exactly one class realizing an interface.

    `LookupError` is raised when no class or more than one class matches
    the query.

    :Parameters:
     iface
        Interface to look for.
     params
        Injection parameters to match.
    """
    found = tuple(query(iface, **params))
    if len(found) != 1:
        raise LookupError('{} components of {} found for {}'.format(
            len(found), iface.__name__, params))
    return found[0]


def params(cls):
    """
    Get injection parameters of a class.

    :Parameters:
     cls
        Class realizing an interface.
    """
    for c, p in ichain(_registry.values()):
        if c is cls:
            return p


# vim: sw=4:et:ai
