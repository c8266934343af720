import os
import sys
import argparse

from . import __version__
from . import commands
from . import config
from . import cli
from .exceptions import ConfigException


class HlatApp(object):

    def __init__(self):
        self.cli = None

    def run(self, argv=None):
        registry = commands.CommandRegistry()
        args = self.args(registry, argv)
        location = os.path.realpath(os.getcwd())

        try:
            settings = config.RunConfig.load(location, overrides=self.overrides(args))
        except ConfigException as e:
            self.cli = cli.make(args['debug'], args.get('format') == 'json')
            commands.HlatCommandContext(self.cli, args['command'], args, None, registry).fail(e)
            return

        self.cli = cli.make(args['debug'], settings.format == 'json')
        self.cli.debug('Config: {}'.format(dict(sorted(settings.items()))))

        with commands.HlatCommandContext(self.cli, args['command'], args, settings, registry) as cmd:
            cmd.run(args)

    @staticmethod
    def overrides(args):
        return {
            'max_nodes': args.get('max_nodes'),
            'm_max': args.get('m_max'),
            'rank_guard': args.get('rank_guard'),
            'workers': args.get('workers'),
            'format': args.get('format')
        }

    def args(self, registry, argv=None):
        parser = argparse.ArgumentParser(prog='hlat', description='Exact lattice invariants and h-invariant bounds.',
                                         allow_abbrev=False)
        parser.add_argument('-d', '--debug', help='Run with debug output enabled', action='store_true')
        parser.add_argument('--version', action='version', version='hlat {}'.format(__version__))
        parser.add_argument('--format', choices=config.FORMATS, help='Output format, text by default')
        parser.add_argument('--max-nodes', dest='max_nodes', type=int,
                            help='Enumeration node limit for the whole command (overrides HLAT_MAX_NODES)')
        parser.add_argument('--workers', type=int, help='Processes for the e-invariant sweep, 0 for one per core')
        parser.add_argument('--m-max', dest='m_max', type=int, help='Highest eta polynomial degree to expand')
        parser.add_argument('--rank-guard', dest='rank_guard', type=int, help='Largest rank for the class sweep')

        registry.args(parser)
        args = vars(parser.parse_args(argv))

        if not args['command']:
            parser.print_help()
            sys.exit(2)
        return args


def go():
    (HlatApp()).run()


if __name__ == "__main__":
    go()
