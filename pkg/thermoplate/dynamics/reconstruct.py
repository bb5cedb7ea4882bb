from ..exceptions import BasisMismatch, PlateError
from ..model import calculus
from ..spectral import NodalField, apply_A_power, gradient, divergence

from collections import namedtuple
import numpy as np


Rates = namedtuple('Rates', ( 't', 'w_t', 'w_tt', 'theta_t', 'q_t' ))
Residuals = namedtuple('Residuals', ( 'plate', 'heat', 'flux' ))


def gradient_flux(p):
    '''The gradient flux q = -grad A^{-1} p, whose divergence is p'''
    return tuple(-g for g in gradient(apply_A_power(p, -1)))


def reconstruct_w_q(state, q0=None):
    '''
    The original plate variables from a reduced state:

        w = A^{-1} z
        q = q0 + grad A^{-1} div q0 - grad A^{-1} p

    q0 is a tuple of NodalField (one per axis); None means the gradient flux of p(t0) is
    not known and the zero flux is used.  div q = p holds by construction.
    '''
    basis = state.basis
    if q0 is None:
        q0 = tuple(NodalField(basis, np.zeros(basis.grid_shape)) for _ in range(basis.dim))
    if len(q0) != basis.dim or any(c.basis != basis for c in q0):
        raise BasisMismatch('q0 needs {} components on {}'.format(basis.dim, basis))
    w = apply_A_power(state.z, -1)
    correction = gradient(apply_A_power(divergence(q0) - state.p, -1))
    q = tuple(c + g for c, g in zip(q0, correction))
    return w, q


def finite_difference_rates(before, middle, after):
    '''
    Central time differences at the middle of three equally spaced snapshots,
    each a (t, w, theta, q) tuple of reconstructed fields.
    '''
    (t0, w0, th0, q0), (t1, w1, th1, q1), (t2, w2, th2, q2) = before, middle, after
    h = t1 - t0
    if not (h > 0 and abs((t2 - t1) - h) <= 1e-9 * h):
        raise PlateError('finite differences need equally spaced snapshots (got {}, {}, {})'.format(t0, t1, t2))
    return Rates(
        t=t1,
        w_t=(w2 - w0) / (2.0 * h),
        w_tt=(w2 - 2.0 * w1 + w0) / (h * h),
        theta_t=(th2 - th0) / (2.0 * h),
        q_t=tuple((b - a) / (2.0 * h) for a, b in zip(q0, q2)),
    )


def residual_original(w, theta, q, rates, params, nl):
    '''
    L2 norms of the residuals of the original plate system

        plate   w_tt - gamma Lap w_tt + Lap K(Lap w) + alpha Lap theta
        heat    beta theta_t + div q + sigma theta - alpha Lap w_t
        flux    tau q_t + q + eta grad theta

    with Lap = -A and Lap K(Lap w) = A N(A w) = kappa0 A z - A F(z) for z = A w.
    `rates` carries w_t, w_tt, theta_t and q_t (finite_difference_rates or exact values).
    '''
    z = apply_A_power(w, 1)
    plate = (rates.w_tt + params.gamma * apply_A_power(rates.w_tt, 1) + params.kappa0 * apply_A_power(z, 1)
             - calculus.apply_AF(z, nl) - params.alpha * apply_A_power(theta, 1))
    heat = params.beta * rates.theta_t + divergence(q) + params.sigma * theta + params.alpha * apply_A_power(rates.w_t, 1)
    grad_theta = gradient(theta)
    flux = [ params.tau * qt + qc + params.eta * g for qt, qc, g in zip(rates.q_t, q, grad_theta) ]
    flux_norm = np.sqrt(sum((c * c).quadrature() for c in flux))
    return Residuals(plate.norm(), heat.norm(), float(flux_norm))
