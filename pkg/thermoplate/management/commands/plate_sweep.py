from django.core.management.base import BaseCommand, CommandError

from thermoplate.config import csv_precision
from thermoplate.exceptions import OracleError
from thermoplate.management.mixins import PlateCommandMixIn, EXIT_CODES
from thermoplate.oracle import stability_sweep

import os.path


SWEEP_HEADER = ( 'gamma', 'tau', 'inf_neg_abscissa', 'trend_ratio', 'classification' )


class Command(PlateCommandMixIn, BaseCommand):
    help = 'Classifies each (gamma, tau) cell of the sweep section as uniformly damped or not; writes sweep.csv.'

    def handle(self, *args, **options):
        cfg, out = self.load(options)
        basis, params = self.build_oracle(cfg)
        sweep = cfg.sweep
        try:
            cells = stability_sweep(params, sweep.gammas, sweep.taus, sweep.k_max, sweep.length, options['threads'], sweep.drift_ratio)
        except OracleError as e:
            raise CommandError(str(e), returncode=EXIT_CODES['config'])
        rows = [ ( c.gamma, c.tau, c.inf_neg_abscissa, c.trend_ratio, c.classification ) for c in cells ]
        path = os.path.join(self.ensure_dir(out), 'sweep.csv')
        self.write_csv(path, SWEEP_HEADER, rows, csv_precision(cfg))
        for c in cells:
            self.message('gamma={:<8g} tau={:<8g} {}'.format(c.gamma, c.tau, c.classification), level=1, tab=1)
