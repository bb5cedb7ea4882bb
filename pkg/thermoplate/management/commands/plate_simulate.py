from django.core.management.base import BaseCommand, CommandError

from thermoplate.config import csv_precision
from thermoplate.diagnostics import level1_energy, dissipation_residual, decay_fit, barrier_report
from thermoplate.dynamics import simulate
from thermoplate.exceptions import DiagnosticsError, ModelError
from thermoplate.management.mixins import PlateCommandMixIn, EXIT_CODES
from thermoplate.util import canonical_json
from thermoplate.version import __version__

import csv
import os
import os.path


SERIES_HEADER = ( 't', 'E1', 'E2', 'E3', 'E', 'X', 'Y', 'ellipticity_min', 'picard_iters' )


class Command(PlateCommandMixIn, BaseCommand):
    help = 'Simulates the plate system from a configuration file; writes series.csv, summary.json and config.json.'

    def handle(self, *args, **options):
        cfg, out = self.load(options)
        basis, params, report, nl, initial, opts = self.build(cfg)
        try:
            params.require_time_domain()
        except ModelError as e:
            raise CommandError(str(e), returncode=EXIT_CODES['config'])
        precision = csv_precision(cfg)

        self.ensure_dir(out)
        with open(os.path.join(out, 'config.json'), 'w', encoding='utf-8', newline='\n') as fout:
            fout.write(cfg.canonical())

        series_path = os.path.join(out, 'series.csv')
        self.message('Simulating {} on {} modes to t={}'.format(nl.name, basis.modes, opts.t_end), level=2)
        with open(series_path, 'w', encoding='utf-8', newline='') as fout:
            writer = csv.writer(fout, lineterminator='\n')
            writer.writerow(SERIES_HEADER)
            def sink(record):
                writer.writerow([ self.format_cell(v, precision) for v in record.as_row() ])
            result = simulate(initial.state, params, nl, opts, sinks=[ sink ])

        summary = self.summarize(cfg, params, report, nl, initial, opts, result)
        with open(os.path.join(out, 'summary.json'), 'w', encoding='utf-8', newline='\n') as fout:
            fout.write(canonical_json(summary))
        self.message('{} at t={} ({} records) -> {}'.format(result.halt, format(result.t, '.6g'), len(result.records), out))
        self.halt(result.halt, '{} at t={:.6g}: {}'.format(result.halt, result.t, result.error))


    def summarize(self, cfg, params, report, nl, initial, opts, result):
        records = result.records
        summary = {
            'halt': str(result.halt),
            'halt_message': str(result.error) if result.error is not None else None,
            'final_time': result.t,
            'nonlinearity': nl.name,
            'E1_initial': level1_energy(initial.state, params),
            'E1_final': level1_energy(result.final_state, params),
            'X_initial': records[0].energy.X if records else None,
            'X_final': records[-1].energy.X if records else None,
            'ellipticity_min': min(r.ellipticity_min for r in records) if records else None,
            'picard': result.picard_stats(),
            'p0_complement_norm': initial.p_complement,
            'decay_fit': None,
            'dissipation_residual': None,
            'barrier': None,
            'normalization': None,
            'config': cfg.canonical(),
            'version': __version__,
        }
        if len(records) >= 10:
            try:
                fit = decay_fit([ ( r.t, r.energy.X ) for r in records ])
                summary['decay_fit'] = {
                    'kappa_hat': fit.kappa_hat,
                    'C_hat': fit.C_hat,
                    'r_squared': fit.r_squared,
                    'window': list(fit.window),
                }
            except DiagnosticsError as e:
                self.message('No decay fit: {}'.format(e), level=2)
        if params.sigma == 0 and opts.record_stride == 1 and len(records) >= 2:
            summary['dissipation_residual'] = dissipation_residual([ ( r.t, r.state ) for r in records ], params, nl)
        if records:
            barrier = barrier_report([ r.energy for r in records ])
            summary['barrier'] = {
                'sup_X_ratio': barrier.sup_X_ratio,
                'sup_E1_ratio': barrier.sup_E1_ratio,
                'monotone_from': barrier.monotone_from,
                'eventually_monotone': barrier.eventually_monotone,
            }
        if report is not None:
            summary['normalization'] = {
                'params': report.params.as_dict(),
                'theta_scale': report.theta_scale,
                'stiffness_scale': report.stiffness_scale,
                'plate_coupling': report.plate_coupling,
                'heat_coupling': report.heat_coupling,
            }
        return summary
