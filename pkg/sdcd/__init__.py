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
SDCD is a toolbox for streaming detection of significant delay changes in
public transport systems.

Vehicle location records are turned into delay signals per edge of
a transport network and fed to keyed change detectors (ADWIN, KSWIN,
HDDM_A). Detected changes are reported as daily summaries and map layers.
"""

__version__ = '0.3.0'

# vim: sw=4:et:ai
