from ..exceptions import BlowUpError, DegeneracyError, NonFiniteError, PicardDivergence, PlateError
from ..model import calculus
from ..model.nonlinearity import ellipticity_min
from ..oracle import mode_matrices
from ..spectral import SpectralField
from ..util import log
from .jets import inertia_multiplier
from .state import PlateState

from collections import namedtuple
import functools
import logging
import numpy as np


StepResult = namedtuple('StepResult', ( 'state', 'iterations', 'distance' ))


#########################################################
###   Per-mode midpoint propagators


class MidpointPropagator(object):
    '''
    The implicit midpoint rule for u' = M u + f on every mode at once:

        (I - dt/2 M) u1 = (I + dt/2 M) u0 + dt f
        u1 = P u0 + dt R f,    P = (I - dt/2 M)^{-1} (I + dt/2 M),    R = (I - dt/2 M)^{-1}

    u is the (modes, 4) stack of PlateState.  The forcing only enters the z_t row.
    '''
    def __init__(self, basis, params, dt):
        self.basis = basis
        self.params = params
        self.dt = dt
        M = mode_matrices(basis.eigenvalues.ravel(), params)
        eye = np.broadcast_to(np.eye(4), M.shape)
        lhs = eye - 0.5 * dt * M
        try:
            self.R = np.linalg.solve(lhs, eye)
        except np.linalg.LinAlgError as e:
            raise PlateError('singular midpoint system at dt={}: {}'.format(dt, e))
        self.P = self.R @ (eye + 0.5 * dt * M)
        # forcing column of R scaled by lambda / (1 + gamma lambda)
        self.force = self.R[:, :, 1] * inertia_multiplier(basis, params).ravel()[:, None]

    def __call__(self, u0, AF=None):
        u1 = np.einsum('kij,kj->ki', self.P, u0)
        if AF is not None:
            u1 = u1 + self.dt * self.force * AF.coeffs.ravel()[:, None]
        return u1


@functools.lru_cache(maxsize=16)
def midpoint_propagator(basis, params, dt):
    return MidpointPropagator(basis, params, dt)



#########################################################
###   Steps


def step_linear_midpoint(state, dt, params):
    '''One implicit midpoint step of the linear system (F = 0)'''
    params.require_time_domain()
    u1 = midpoint_propagator(state.basis, params, dt)(state.stack())
    return PlateState.from_stack(state.basis, state.t + dt, u1)


def _field_distance(a, b):
    return float(np.max(np.sqrt(np.sum((a - b) ** 2, axis=0))))


def step_nonlinear(state, dt, params, nl, opts):
    '''
    One implicit midpoint step of the quasilinear system, solved by Picard
    iteration on the frozen midpoint displacement:

        u^(j+1) = P u_n + dt R f( A F( (z_n + z^(j)) / 2 ) )

    starting from the linear step with forcing A F(z_n).  Converged when the
    largest L2 change over the four fields is at most picard_tol.
    '''
    params.require_time_domain()
    basis = state.basis
    propagate = midpoint_propagator(basis, params, dt)
    a = ellipticity_min(state.z, nl)
    if a <= opts.degeneracy_eps:
        raise DegeneracyError(state.t, a)
    u0 = state.stack()
    z0 = u0[:, 0]
    try:
        u1 = propagate(u0, calculus.apply_AF(state.z, nl))
        if nl.linear:
            return StepResult(PlateState.from_stack(basis, state.t + dt, u1), 1, 0.0)
        distance = np.inf
        for iteration in range(1, opts.picard_max_iter + 1):
            if not np.all(np.isfinite(u1)):
                raise PicardDivergence(state.t, np.inf, 'Picard iterate became non-finite at t={:.6g}'.format(state.t))
            z_mid = SpectralField(basis, (0.5 * (z0 + u1[:, 0])).reshape(basis.shape))
            a = ellipticity_min(z_mid, nl)
            if a <= opts.degeneracy_eps:
                raise DegeneracyError(state.t + 0.5 * dt, a)
            u_next = propagate(u0, calculus.apply_AF(z_mid, nl))
            distance = _field_distance(u_next, u1)
            u1 = u_next
            if not np.isfinite(distance):
                raise PicardDivergence(state.t, np.inf, 'Picard iterates drifted to infinity at t={:.6g}'.format(state.t))
            if distance <= opts.picard_tol:
                if log.isEnabledFor(logging.DEBUG):
                    log.debug('picard t=%.6g converged in %s iterations (distance %.3g)', state.t, iteration, distance)
                return StepResult(PlateState.from_stack(basis, state.t + dt, u1), iteration, distance)
    except NonFiniteError as e:
        raise PicardDivergence(state.t, np.inf, 'Picard iteration produced {} at t={:.6g}'.format(e, state.t))
    raise PicardDivergence(state.t, distance, 'Picard iteration missed tolerance {} after {} iterations at t={:.6g} (distance {:.3g}); reduce dt'.format(
        opts.picard_tol, opts.picard_max_iter, state.t, distance))


def step_split_explicit(state, dt, params, nl, opts):
    '''
    Strang splitting: half a kick of the nonlinear forcing on z_t, a linear
    midpoint step, and another half kick with the forcing of the new z.
    '''
    params.require_time_domain()
    basis = state.basis
    a = ellipticity_min(state.z, nl)
    if a <= opts.degeneracy_eps:
        raise DegeneracyError(state.t, a)
    kick = inertia_multiplier(basis, params) * (0.5 * dt)
    try:
        half = state.stack()
        half[:, 1] += (kick * calculus.apply_AF(state.z, nl).coeffs).ravel()
        u1 = midpoint_propagator(basis, params, dt)(half)
        z1 = SpectralField(basis, u1[:, 0].reshape(basis.shape))
        u1[:, 1] += (kick * calculus.apply_AF(z1, nl).coeffs).ravel()
    except NonFiniteError as e:
        raise BlowUpError(state.t, np.inf, 'split step produced {} at t={:.6g}'.format(e, state.t))
    return StepResult(PlateState.from_stack(basis, state.t + dt, u1), 1, 0.0)


def step_linear(state, dt, params, nl, opts):
    '''StepResult wrapper of step_linear_midpoint; the nonlinearity is ignored'''
    return StepResult(step_linear_midpoint(state, dt, params), 1, 0.0)


SCHEME_STEPS = {
    'picard-midpoint': step_nonlinear,
    'split-explicit': step_split_explicit,
    'linear-midpoint': step_linear,
}
