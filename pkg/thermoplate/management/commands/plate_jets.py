from django.core.management.base import BaseCommand, CommandError

from thermoplate.dynamics import initial_jet
from thermoplate.exceptions import DegeneracyError, ModelError
from thermoplate.management.mixins import PlateCommandMixIn, EXIT_CODES
from thermoplate.util import canonical_json

import os.path


# output key -> jet field
JET_KEYS = (
    ( 'z0', 'z' ), ( 'z1', 'z_t' ), ( 'z2', 'z_tt' ), ( 'z3', 'z_ttt' ),
    ( 'theta0', 'theta' ), ( 'theta1', 'theta_t' ), ( 'theta2', 'theta_tt' ), ( 'theta3', 'theta_ttt' ),
    ( 'p0', 'p' ), ( 'p1', 'p_t' ), ( 'p2', 'p_tt' ),
)


class Command(PlateCommandMixIn, BaseCommand):
    help = 'Computes the compatibility jet of the initial data and writes jets.json.'

    def handle(self, *args, **options):
        cfg, out = self.load(options)
        basis, params, report, nl, initial, opts = self.build(cfg)
        state = initial.state
        try:
            jet = initial_jet(state.z, state.v, state.theta, state.p, params, nl, opts.degeneracy_eps, t0=state.t)
        except ModelError as e:
            raise CommandError(str(e), returncode=EXIT_CODES['config'])
        except DegeneracyError as e:
            self.halt_from(e)

        data = { key: getattr(jet, name).coeffs.tolist() for key, name in JET_KEYS }
        data['t0'] = jet.t
        data['modes'] = list(basis.modes)
        data['p0_complement_norm'] = initial.p_complement
        path = os.path.join(self.ensure_dir(out), 'jets.json')
        with open(path, 'w', encoding='utf-8', newline='\n') as fout:
            fout.write(canonical_json(data))
        self.message('Wrote {}'.format(path))
