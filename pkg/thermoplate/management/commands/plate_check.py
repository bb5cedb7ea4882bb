from django.core.management.base import BaseCommand, CommandError

from thermoplate.checks import LEVELS, run_checks, render_report
from thermoplate.management.mixins import PlateCommandMixIn, EXIT_CODES


class Command(PlateCommandMixIn, BaseCommand):
    help = 'Runs the invariant suite and prints a pass/fail table.'
    uses_config = False

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--level',
            choices=LEVELS,
            default='quick',
            help='quick runs the fast invariants; full adds the convergence studies.',
        )

    def handle(self, *args, **options):
        results = run_checks(options['level'])
        self.message(render_report(results).rstrip('\n'), level=0)
        failed = [ r.name for r in results if not r.passed ]
        if failed:
            raise CommandError('{} invariant(s) failed: {}'.format(len(failed), ', '.join(failed)), returncode=EXIT_CODES['check'])
