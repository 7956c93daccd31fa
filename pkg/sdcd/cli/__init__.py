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
Command line user interface.
"""

import argparse
import logging
import sys

from sdcd import __version__
from sdcd.component import query, params

log = logging.getLogger('sdcd.cli')

# exit codes
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_FAILURE = 4

class CLICommand(object):
    """
    SDCD command.
    """
    description = ''

    @classmethod
    def add_arguments(self, parser):
        """
        Add a command arguments to command line parser.

        :Parameters:
         parser
            Parser instance.
        """

    def __call__(self, args):
        """
        Execute SDCD command.

        May raise ArgumentError exception to indicate wrong arguments.

        :Parameters:
         args
            Command arguments.
        """



class ArgumentError(BaseException):
    """
    Error to indicate incorrect SDCD command arguments.
    """



def add_commands(parser, title=None):
    """
    Find and add commands to the argument parser.

    :Parameters:
     parser
        Argument parser (from argparse module).
     title
        Help title of commands.
    """
    subp = parser.add_subparsers(dest='subcmd', title=title)

    # find SDCD commands and sort them by their names
    commands = sorted(query(CLICommand), key=lambda cls: params(cls)['name'])

    for cls in commands:
        name = params(cls)['name']
        p = subp.add_parser(name, help=cls.description,
            description=cls.description)
        p.set_defaults(cmd=cls, parser=p)
        cls.add_arguments(p)


def add_hours(parser):
    """
    Add detection events filter options to a parser.

    :Parameters:
     parser
        ``argparse`` library parser.
    """
    parser.add_argument('--from-hour',
            type=int,
            dest='from_hour',
            help='report detections from the hour of day (inclusive)')
    parser.add_argument('--to-hour',
            type=int,
            dest='to_hour',
            help='report detections until the hour of day (exclusive)')
    parser.add_argument('--min-abs',
            type=float,
            dest='min_abs',
            help='report detections with absolute value at least'
                ' the number of seconds')


def create_parser():
    """
    Create command line parser with all SDCD commands.
    """
    # load modules of all commands
    import sdcd.cli.run
    import sdcd.cli.data
    import sdcd.cli.report

    parser = argparse.ArgumentParser(prog='sdcd',
        description='SDCD {} - streaming delay change detection for public'
            ' transport'.format(__version__))
    parser.add_argument('-v', '--verbose',
            action='store_true',
            dest='verbose',
            default=False,
            help='explain what is being done')
    parser.add_argument('--version', action='version',
            version='%(prog)s ' + __version__)
    add_commands(parser, title='Commands')
    return parser


def main(argv=None):
    """
    Parse command line arguments and execute SDCD command.

    Exit code is returned.

    :Parameters:
     argv
        Command line arguments, ``sys.argv`` by default.
    """
    from sdcd.config import ConfigError
    from sdcd.ingest import InputError
    from sdcd.simulation import ScenarioError

    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_CONFIG if ex.code else EXIT_OK

    level = logging.DEBUG if args.verbose else logging.WARNING
    logging.basicConfig(level=level, format='%(levelname)s: %(message)s')
    logging.getLogger().setLevel(level)

    if getattr(args, 'cmd', None) is None:
        parser.print_help()
        return EXIT_CONFIG

    code, error = EXIT_OK, None
    try:
        args.cmd()(args)
    except (ArgumentError, ConfigError) as ex:
        code, error = EXIT_CONFIG, ex
    except (InputError, ScenarioError) as ex:
        code, error = EXIT_INPUT, ex
    except Exception as ex:
        code, error = EXIT_FAILURE, ex

    if error is not None:
        print('sdcd: {}'.format(error), file=sys.stderr)
        log.debug('command failed', exc_info=error)
    return code


# vim: sw=4:et:ai
