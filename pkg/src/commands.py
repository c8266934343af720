import sys

from . import exceptions
from . import enumeration
from . import invariants
from . import hbounds
from . import detline
from . import parser
from . import report


class CommandRegistry(object):
    def __init__(self):
        self.commands = {
            InfoCommand.COMMAND: InfoCommand,
            CosetMinCommand.COMMAND: CosetMinCommand,
            ExtremalCommand.COMMAND: ExtremalCommand,
            EtaCommand.COMMAND: EtaCommand,
            EInvariantCommand.COMMAND: EInvariantCommand,
            HBoundCommand.COMMAND: HBoundCommand,
            DetLineCheckCommand.COMMAND: DetLineCheckCommand
        }

    def make(self, command, cli, args, config):
        """
        Create command object specified by the command argument
        :param command: {string} The command object to create
        :param cli: {cli.HlatCli} The cli interface object
        :param args: {dict} The command line parameters
        :param config: {config.RunConfig} Settings for this run
        :return: {HlatCommand} An instance of a hlat command
        """
        cls = self.commands[command]
        return cls.make(cli, args, config)

    def args(self, parser):
        """
        Attaches args to the given parser
        :param parser: {argparse.ArgumentParser} An argparse ArgumentParser instance
        :return: None
        """
        subparsers = parser.add_subparsers(help='hlat sub-commands', dest='command')

        for _, cls in sorted(self.commands.items()):
            cls.args(subparsers)


def add_lattice_arg(parser):
    parser.add_argument('lattice', help="Lattice spec such as 'e8+diag:2' or 'gamma:12', or a JSON lattice file")


def add_vector_args(parser, required=True):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument('--w', help='Vector in basis coordinates, comma separated')
    group.add_argument('--w-ambient', dest='w_ambient',
                       help='Vector in ambient coordinates of a diag or gamma lattice, halves as 1/2')


class HlatCommand(object):
    """
    Base class for hlat command objects
    Property "COMMAND" is used for registering commands

    Subclasses compute a JSON-ready result dict; run() renders it as a report
    (--format json) or as plain lines (the default).
    """
    COMMAND = None

    @classmethod
    def args(cls, subparsers):
        """
        Used to attach related argument structure to the hlat subcommands
        :param subparsers: {argparse._SubParsersAction}
        :return: None
        """
        raise NotImplementedError("Method 'args' not implemented in base class")

    @classmethod
    def make(cls, cli, args, config):
        """
        Used to create this command
        :param cli: {cli.HlatCli} Reference to cli object for output
        :param args: {dict} Dictionary of command line arguments
        :param config: {config.RunConfig} Settings for this run
        :return: {HlatCommand} Returns an instance of the invoked HlatCommand class
        """
        return cls(cli, config)

    def __init__(self, cli, config):
        self.cli = cli
        self.config = config
        self.budget = config.budget()

    def run(self, args):
        """
        Run the subcommand.
        :param args: {dict} Command line arguments, as parsed by argparse, converted to a dict
        :return: {dict} The result
        """
        result = self.compute(args)
        self.cli.debug('{} enumeration nodes used'.format(self.budget.nodes_used))
        if self.config.format == 'json':
            self.cli.emit(report.render(report.build(self.COMMAND, result, self.config)))
        else:
            for line in self.describe(result):
                self.cli.emit(line)
        return result

    def compute(self, args):
        raise NotImplementedError("Method 'compute' not implemented in base class")

    def describe(self, result):
        """
        Plain text lines for a result
        """
        return ['{}: {}'.format(key, value) for key, value in sorted(result.items())]

    def cleanup(self):
        pass

    def sweep_options(self):
        return {
            'm_max': self.config.m_max,
            'rank_guard': self.config.rank_guard,
            'workers': self.config.workers,
            'writer': self.cli
        }


class LatticeCommand(HlatCommand):
    """
    A command whose first positional argument is a lattice spec
    """
    @classmethod
    def make(cls, cli, args, config):
        lattice = parser.parse_lattice_spec(args['lattice'])
        cli.debug('Using {} (rank {})'.format(lattice.label, lattice.rank))
        return cls(cli, config, lattice)

    def __init__(self, cli, config, lattice):
        super(LatticeCommand, self).__init__(cli, config)
        self.lattice = lattice

    def vector(self, args, key='w'):
        if args.get(key + '_ambient'):
            return self.lattice.ambient_to_basis(parser.parse_ambient(args[key + '_ambient']))
        return parser.parse_vector(args[key])


class InfoCommand(LatticeCommand):
    COMMAND = 'info'

    @classmethod
    def args(cls, subparsers):
        info = subparsers.add_parser(InfoCommand.COMMAND, help='Show rank, determinant and parity of a lattice',
                                     epilog='Example: hlat info e8 --theta 4')
        add_lattice_arg(info)
        info.add_argument('--theta', type=int, help='Also count lattice vectors of each norm up to this bound')

    def compute(self, args):
        lattice = self.lattice
        result = {
            'lattice': lattice.label,
            'rank': lattice.rank,
            'determinant': lattice.determinant,
            'even': lattice.is_even,
            'unimodular': lattice.is_unimodular,
            'sign': lattice.sign
        }
        if args.get('theta') is not None:
            counts = invariants.theta_counts(lattice, args['theta'], self.budget)
            result['theta'] = {str(norm): count for norm, count in sorted(counts.items())}
        return result


class CosetMinCommand(LatticeCommand):
    COMMAND = 'coset-min'

    @classmethod
    def args(cls, subparsers):
        coset = subparsers.add_parser(CosetMinCommand.COMMAND, help='Minimal norm of the coset w + 2L',
                                      epilog='Example: hlat coset-min e8 --w-ambient 1,1,1,1,0,0,0,0 --list')
        add_lattice_arg(coset)
        add_vector_args(coset)
        coset.add_argument('--list', action='store_true', help='List every minimizer')

    def compute(self, args):
        w = self.vector(args)
        found = enumeration.coset_min(self.lattice, w, self.budget)
        result = {
            'w': list(w),
            'min_norm': found.min_norm,
            'count': len(found.minimizers),
            'nodes_visited': found.nodes_visited
        }
        if args.get('list'):
            result['minimizers'] = [list(z) for z in found.minimizers]
        return result

    def describe(self, result):
        lines = ['{} {}'.format(result['min_norm'], result['count'])]
        for z in result.get('minimizers', []):
            lines.append(','.join(str(c) for c in z))
        return lines


class ExtremalCommand(LatticeCommand):
    COMMAND = 'extremal'

    @classmethod
    def args(cls, subparsers):
        extremal = subparsers.add_parser(ExtremalCommand.COMMAND, help='Is w of minimal norm in w + 2L',
                                         epilog='Example: hlat extremal diag:4 --w 1,1,1,1')
        add_lattice_arg(extremal)
        add_vector_args(extremal)

    def compute(self, args):
        w = self.vector(args)
        norm = self.lattice.norm(w)
        found = enumeration.coset_min(self.lattice, w, self.budget)
        shorter = found.minimizers[0] if found.min_norm < norm else None
        return {
            'w': list(w),
            'norm': norm,
            'min_norm': found.min_norm,
            'extremal': shorter is None,
            'shorter': list(shorter) if shorter is not None else None
        }

    def describe(self, result):
        if result['extremal']:
            return ['true']
        return ['false', ','.join(str(c) for c in result['shorter'])]


class EtaCommand(LatticeCommand):
    COMMAND = 'eta'

    @classmethod
    def args(cls, subparsers):
        eta = subparsers.add_parser(EtaCommand.COMMAND, help='Signed sum over the minimizers of w + 2L',
                                    epilog='Example: hlat eta e8 --w-ambient 1,1,1,1,0,0,0,0 --m 0')
        add_lattice_arg(eta)
        add_vector_args(eta)
        eta.add_argument('--a', help='Functional in dual coordinates, comma separated')
        eta.add_argument('--m', type=int, required=True, help='Degree, of the same parity as w.w')
        eta.add_argument('--polynomial', action='store_true', help='Print the coefficients of the eta polynomial')

    def compute(self, args):
        w = self.vector(args)
        m = args['m']
        result = {'w': list(w), 'm': m}
        if args.get('polynomial'):
            poly = invariants.eta_polynomial(self.lattice, w, m, self.budget, self.config.m_max)
            result['polynomial'] = poly.to_dict()
            result['text'] = str(poly)
        else:
            a = parser.parse_dual(args['a']) if args.get('a') else None
            if a is None and m:
                raise ValueError('--a is required when m > 0 unless --polynomial is given')
            result['eta'] = invariants.eta(self.lattice, w, a, m, self.budget)
        return result

    def describe(self, result):
        if 'polynomial' in result:
            return [result['text']]
        return [str(result['eta'])]


class EInvariantCommand(LatticeCommand):
    COMMAND = 'e-invariant'

    @classmethod
    def args(cls, subparsers):
        e = subparsers.add_parser(EInvariantCommand.COMMAND, help='The lattice invariant e(L) with its certificate',
                                  epilog='Example: hlat e-invariant e8+diag:1 --format json')
        add_lattice_arg(e)

    def compute(self, args):
        certificate = invariants.e_invariant(self.lattice, self.budget, **self.sweep_options())
        return certificate.to_dict()

    def describe(self, result):
        witness = result['witness']
        self.cli.info('witness class {} with w = {}, norm {}, m = {}'
                      .format(witness['class'], witness['w'], witness['norm'], witness['m']))
        return [str(result['value'])]


class HBoundCommand(HlatCommand):
    COMMAND = 'h-bound'

    BOUNDS = ('brieskorn', 'certificate', 'surgery', 'filling', 'torus-knot')

    @classmethod
    def args(cls, subparsers):
        bound = subparsers.add_parser(HBoundCommand.COMMAND, help='Certified bounds on the h-invariant',
                                      epilog='Example: hlat h-bound brieskorn --k 4')
        kinds = bound.add_subparsers(help='kind of bound', dest='bound')
        kinds.required = True

        brieskorn = kinds.add_parser('brieskorn', help='h of the Brieskorn sphere S(2, 2k-1, 4k-3)')
        brieskorn.add_argument('--k', type=int, required=True)

        certificate = kinds.add_parser('certificate', help='Lower bound from an extremal vector w and degree m')
        add_lattice_arg(certificate)
        add_vector_args(certificate)
        certificate.add_argument('--m', type=int, required=True)
        certificate.add_argument('--a', help='Functional at which to report eta, comma separated')
        certificate.add_argument('--g', type=int, required=True, help='Genus of the embedded surface')
        certificate.add_argument('--bplus', type=int, default=1, help='b2+ of the 4-manifold')

        surgery = kinds.add_parser('surgery', help='Bounds on h(Y\') - h(Y) for -1 surgery on a knot')
        surgery.add_argument('--genus', type=int, required=True)

        filling = kinds.add_parser('filling', help='h(Y) >= e(L) for a negative definite filling with form L')
        add_lattice_arg(filling)
        filling.add_argument('--h', type=int, help='Known h(Y); reports whether L is obstructed')

        torus = kinds.add_parser('torus-knot', help='Bounds on h of -1 surgery on the (p, q) torus knot')
        torus.add_argument('--p', type=int, required=True)
        torus.add_argument('--q', type=int, required=True)

    @classmethod
    def make(cls, cli, args, config):
        lattice = parser.parse_lattice_spec(args['lattice']) if args.get('lattice') else None
        return cls(cli, config, args['bound'], lattice)

    def __init__(self, cli, config, bound, lattice=None):
        super(HBoundCommand, self).__init__(cli, config)
        self.bound = bound
        self.lattice = lattice

    def compute(self, args):
        method = getattr(self, self.bound.replace('-', '_'))
        result = method(args).to_dict()
        result['bound'] = self.bound
        return result

    def describe(self, result):
        if result['value'] is not None:
            return [str(result['value'])]
        if result['upper'] is None:
            return ['>= {}'.format(result['lower'])]
        return ['{} {}'.format(result['lower'], result['upper'])]

    def brieskorn(self, args):
        return hbounds.brieskorn_h(args['k'], self.budget)

    def certificate(self, args):
        if args.get('w_ambient'):
            w = self.lattice.ambient_to_basis(parser.parse_ambient(args['w_ambient']))
        else:
            w = parser.parse_vector(args['w'])
        a = parser.parse_dual(args['a']) if args.get('a') else None
        inp = hbounds.HBoundInput(args['g'], args['bplus'], self.lattice, w, a, args['m'])
        return hbounds.certify_lower(inp, self.budget, self.config.m_max)

    def surgery(self, args):
        lower, upper = hbounds.surgery_upper(args['genus'])
        return hbounds.HBoundResult(lower, upper, {'genus': args['genus']})

    def filling(self, args):
        result = hbounds.filling_bound(self.lattice, args.get('h'), self.budget, **self.sweep_options())
        if result.certificate.get('obstructed'):
            self.cli.warn('{} is not the form of a negative definite filling with h = {}'
                          .format(self.lattice.label, args['h']))
        return result

    def torus_knot(self, args):
        return hbounds.torus_knot_surgery_upper(args['p'], args['q'])


class DetLineCheckCommand(HlatCommand):
    COMMAND = 'detline-check'

    @classmethod
    def args(cls, subparsers):
        check = subparsers.add_parser(DetLineCheckCommand.COMMAND,
                                      help='Randomized check of the determinant line sign identities',
                                      epilog='Example: hlat detline-check --trials 1000 --seed 7')
        check.add_argument('--trials', type=int, default=1000)
        check.add_argument('--max-dim', dest='max_dim', type=int, default=5)
        check.add_argument('--seed', type=int, help='Random seed, defaults to the configured seed')

    def compute(self, args):
        if args['trials'] < 1 or args['max_dim'] < 2:
            raise ValueError('Need at least one trial and max-dim >= 2')
        seed = self.config.seed if args.get('seed') is None else args['seed']
        counts = detline.run_checks(args['trials'], args['max_dim'], seed, self.cli)
        failed = sorted(name for name, count in counts.items() if count['failed'])
        if failed:
            for name in failed:
                self.cli.error('{}: {} of {} trials failed'.format(name, counts[name]['failed'], args['trials']))
            raise exceptions.InvariantViolationException('Sign identities failed: {}'.format(', '.join(failed)))
        return {'trials': args['trials'], 'max_dim': args['max_dim'], 'seed': seed, 'checks': counts}

    def describe(self, result):
        return ['{} passed {}'.format(name, count['passed']) for name, count in sorted(result['checks'].items())]


class HlatCommandContext(object):
    """
    Runs a command, turning hlat errors into a message, an action hint and an exit code
    """
    ERRORS = {
        exceptions.LatticeParseException: (2, "Lattice specs are e8, diag:N or gamma:N joined by '+', "
                                              "or a JSON lattice file"),
        exceptions.NotUnimodularException: (2, 'Bounds on h need a unimodular lattice'),
        exceptions.NotInLatticeException: (2, 'Check that the ambient vector lies in the lattice'),
        exceptions.LatticeException: (2, 'Check the Gram matrix and the vector lengths'),
        exceptions.ConfigException: (2, 'Fix hlat.json, HLAT_MAX_NODES or the command line flags'),
        exceptions.ParityMismatchException: (2, 'Use an m with the parity of w.w'),
        exceptions.DegreeTooLargeException: (2, 'Raise --m-max'),
        exceptions.RankTooLargeException: (2, 'Raise --rank-guard or use a smaller lattice'),
        exceptions.KTooSmallException: (2, 'The Brieskorn family starts at k = 2'),
        exceptions.BudgetExceededException: (3, 'Raise --max-nodes or HLAT_MAX_NODES'),
        exceptions.CertificateException: (4, 'Try another vector w or degree m'),
        exceptions.NotExactException: (5, 'Run again with --debug and report the instance'),
        exceptions.InvariantViolationException: (5, 'Run again with --debug and report the instance'),
        ValueError: (2, 'Check the command arguments')
    }

    def __init__(self, cli, cmd_name, args, config, registry=None):
        self.cli = cli
        self.cmd_name = cmd_name
        self.args = args
        self.config = config
        self.registry = registry or CommandRegistry()
        self.cmd = None

    @staticmethod
    def lookup(exc):
        for cls in type(exc).__mro__:
            if cls in HlatCommandContext.ERRORS:
                return HlatCommandContext.ERRORS[cls]
        return None

    def __enter__(self):
        try:
            self.cmd = self.registry.make(self.cmd_name, self.cli, self.args, self.config)
        except Exception as e:
            if self.lookup(e) is None:
                raise
            self.fail(e)
        return self.cmd

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.cmd is not None:
            self.cmd.cleanup()
        if exc_val is not None and self.lookup(exc_val) is not None:
            self.fail(exc_val)

    def fail(self, exc):
        code, action = self.lookup(exc)
        self.cli.error(str(exc))
        self.cli.action(action)
        if self.output_format() == 'json':
            self.cli.emit(report.render(report.error(exc, code)))
        sys.exit(code)

    def output_format(self):
        if self.config is not None:
            return self.config.format
        return self.args.get('format') or 'text'
