from django.core.management.base import CommandError

from ..config import load_config, build_run
from ..dynamics import HaltReason
from ..exceptions import ConfigError, PlateError
from ..util import log, format_number

import csv
import logging
import os


# exit codes of the plate commands
EXIT_CODES = {
    HaltReason.Completed: 0,
    'config': 1,
    HaltReason.Degeneracy: 2,
    HaltReason.BlowUp: 3,
    HaltReason.PicardDivergence: 4,
    'check': 5,
}

# package log level per verbosity
LOG_LEVELS = {
    0: logging.WARNING,
    1: logging.INFO,
    2: logging.INFO,
    3: logging.DEBUG,
}


#########################################
###  Mixin for all plate commands

class PlateCommandMixIn(object):
    '''Options and helpers shared by the plate_* commands'''
    # the commands do not touch models or urls
    requires_system_checks = []

    # set to False on commands that do not read a run configuration
    uses_config = True

    def add_arguments(self, parser):
        super().add_arguments(parser)

        # django also provides a verbosity parameter
        # these two are just convenience params to it
        parser.add_argument(
            '--verbose',
            action='store_true',
            dest='verbose',
            default=False,
            help='Set verbosity to level 3 (see --verbosity), which also enables debug logging.',
        )
        parser.add_argument(
            '--quiet',
            action='store_true',
            dest='quiet',
            default=False,
            help='Set verbosity to level 0, which silences all messages and logs warnings only.',
        )
        if self.uses_config:
            parser.add_argument(
                '--config',
                type=str,
                required=True,
                metavar='PATH',
                help='The YAML run configuration.',
            )
            parser.add_argument(
                '--out',
                type=str,
                default=None,
                metavar='DIR',
                help='Output directory (overrides output.directory in the configuration).',
            )
            parser.add_argument(
                '--threads',
                type=int,
                default=1,
                metavar='N',
                help='Worker threads for per-mode eigensolves; 1 (the default) keeps every run reproducible.',
            )


    def execute(self, *args, **options):
        '''Placing this in execute because then subclass handle() don't have to call super'''
        if options.get('verbose'):
            options['verbosity'] = 3
        if options.get('quiet'):
            options['verbosity'] = 0
        self.verbosity = options.get('verbosity', 1)
        log.setLevel(LOG_LEVELS.get(self.verbosity, logging.DEBUG))
        return super().execute(*args, **options)


    def message(self, msg='', level=1, tab=0):
        '''Print a message to the console'''
        if self.verbosity >= level:
            self.stdout.write('{}{}'.format('    ' * tab, msg))


    def load(self, options):
        '''(RunConfig, output directory); configuration problems exit with code 1'''
        try:
            cfg = load_config(options['config'])
        except ConfigError as e:
            raise CommandError(str(e), returncode=EXIT_CODES['config'])
        if options.get('threads', 1) < 1:
            raise CommandError('--threads must be at least 1', returncode=EXIT_CODES['config'])
        out = options.get('out') or cfg.output.directory
        return cfg, out


    def build(self, cfg):
        try:
            return build_run(cfg)
        except ConfigError as e:
            raise CommandError(str(e), returncode=EXIT_CODES['config'])


    def halt(self, reason, message):
        '''Raises the CommandError carrying the exit code of a halt reason (no-op for Completed)'''
        if reason is not HaltReason.Completed:
            raise CommandError(message, returncode=EXIT_CODES[reason])


    def halt_from(self, exc):
        self.halt(HaltReason(exc.reason), str(exc))


    def write_csv(self, path, header, rows, precision):
        '''Locale-independent CSV: decimal points, \\n line ends, numbers to `precision` digits'''
        with open(path, 'w', encoding='utf-8', newline='') as fout:
            writer = csv.writer(fout, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([ self.format_cell(v, precision) for v in row ])
        self.message('Wrote {}'.format(path), level=2)


    def format_cell(self, value, precision):
        if isinstance(value, str):
            return value
        if isinstance(value, bool) or value is None:
            return '' if value is None else str(value)
        if isinstance(value, int):
            return str(value)
        return format_number(value, precision)


    def ensure_dir(self, out):
        os.makedirs(out, exist_ok=True)
        return out


    def build_oracle(self, cfg):
        '''(basis, params) for the spectrum commands; gamma = 0 and tau = 0 are allowed'''
        try:
            basis = cfg.build_basis()
            params, report = cfg.build_params()
        except PlateError as e:
            raise CommandError(str(e), returncode=EXIT_CODES['config'])
        return basis, params
