from ..diagnostics import energy_levels
from ..exceptions import HaltException, BlowUpError, NonFiniteError
from ..model.nonlinearity import ellipticity_min
from ..signals import plate_signal_record, plate_signal_halt
from ..spectral import sobolev_norm
from ..util import log
from .jets import runtime_jet
from .state import HaltReason, Jet
from .stepper import SCHEME_STEPS

from dataclasses import dataclass
import math
import numpy as np


@dataclass(frozen=True)
class Record(object):
    '''One recorded sample of a run'''
    t: float
    state: object
    energy: object
    ellipticity_min: float
    picard_iters: int

    def as_row(self):
        return self.energy.as_row() + ( self.picard_iters, )



class SimulationResult(object):
    '''Final state, halt reason and recorded series of a run'''
    def __init__(self, final_state, halt, records, error=None, iterations=None):
        self.final_state = final_state
        self.halt = halt
        self.records = records
        self.error = error
        self.iterations = iterations or []

    def __repr__(self):
        return '<SimulationResult {} t={:.6g} records={}>'.format(self.halt, self.t, len(self.records))

    @property
    def t(self):
        '''time the run stopped'''
        return self.error.t if self.error is not None else self.final_state.t

    def picard_stats(self):
        its = self.iterations
        return {
            'steps': len(its),
            'total': int(sum(its)),
            'max': int(max(its)) if its else 0,
            'mean': float(np.mean(its)) if its else 0.0,
        }


def _record(state, params, nl, opts, iterations):
    jet = runtime_jet(state, params, nl, opts.degeneracy_eps)
    a = ellipticity_min(state.z, nl)
    return Record(state.t, state, energy_levels(jet, params, a), a, iterations)


def simulate(initial, params, nl, opts, sinks=()):
    '''
    Advances the initial state (a PlateState, or a Jet whose level-0 fields are used)
    to opts.t_end with the selected scheme.  Every record_stride steps a Record goes
    to each sink (and to plate_signal_record when signals are on).  Stops early on
    degeneracy, blow-up of the H^3 norm of z, or a Picard failure; the offending
    state is never recorded.
    '''
    params.require_time_domain()
    state = initial.state() if isinstance(initial, Jet) else initial
    state = state.with_time(opts.t0)
    step = SCHEME_STEPS[opts.scheme]
    sinks = tuple(sinks)
    records = []
    iterations = []

    def emit(record):
        records.append(record)
        for sink in sinks:
            sink(record)
        if opts.signals:
            plate_signal_record.send(sender=simulate, record=record)

    log.info('simulate %s: %s steps of dt=%s with %s on %s', nl.name, opts.steps, opts.dt, opts.scheme, state.basis)
    error = None
    try:
        emit(_record(state, params, nl, opts, 0))
        for n in range(1, opts.steps + 1):
            try:
                result = step(state, opts.dt, params, nl, opts)
            except NonFiniteError as e:
                raise BlowUpError(state.t, math.inf, 'non-finite state after t={:.6g} ({})'.format(state.t, e))
            new_state = result.state.with_time(opts.time(n))
            h3 = sobolev_norm(new_state.z, 3)
            if not h3 <= opts.blowup_threshold:
                raise BlowUpError(new_state.t, h3)
            iterations.append(result.iterations)
            if n % opts.record_stride == 0 or n == opts.steps:
                emit(_record(new_state, params, nl, opts, result.iterations))
            state = new_state
        halt = HaltReason.Completed
    except HaltException as e:
        error = e
        halt = HaltReason(e.reason)
        log.info('simulate halted: %s', e)

    outcome = SimulationResult(state, halt, records, error, iterations)
    log.info('simulate finished: %s at t=%.6g after %s steps', halt, outcome.t, len(iterations))
    if opts.signals:
        plate_signal_halt.send(sender=simulate, reason=halt, t=outcome.t, result=outcome)
    return outcome
