from django.core.management.base import BaseCommand

from thermoplate.config import csv_precision
from thermoplate.management.mixins import PlateCommandMixIn
from thermoplate.oracle import mode_spectra, sweep_lambdas
from thermoplate.util import log

import os.path


# eigensolves whose characteristic polynomial residual exceeds this are reported
CHAR_RESIDUAL_WARNING = 1e-9


class Command(PlateCommandMixIn, BaseCommand):
    help = 'Writes spectrum.csv: the eigenvalues and abscissa of each mode k = 1..spectrum.k_max along the first axis.'

    def handle(self, *args, **options):
        cfg, out = self.load(options)
        basis, params = self.build_oracle(cfg)
        lambdas = sweep_lambdas(cfg.spectrum.k_max, basis.lengths[0])
        spectra = mode_spectra(params, lambdas, options['threads'])

        size = len(spectra[0].eigenvalues)
        header = [ 'k', 'lambda' ]
        for i in range(1, size + 1):
            header.extend([ 're{}'.format(i), 'im{}'.format(i) ])
        header.append('abscissa')
        rows = []
        for k, spectrum in enumerate(spectra, start=1):
            if spectrum.char_residual > CHAR_RESIDUAL_WARNING:
                log.warning('mode %s: characteristic polynomial residual %.3g', k, spectrum.char_residual)
            row = [ k, spectrum.lam ]
            for s in spectrum.eigenvalues:
                row.extend([ s.real, s.imag ])
            row.append(spectrum.abscissa)
            rows.append(row)
        path = os.path.join(self.ensure_dir(out), 'spectrum.csv')
        self.write_csv(path, header, rows, csv_precision(cfg))
        self.message('{} modes, largest abscissa {:.6g}'.format(len(rows), max(s.abscissa for s in spectra)))
