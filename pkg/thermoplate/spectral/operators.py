'''
Diagonal functional calculus of A in the sine basis, spectral derivatives
on the nodal grid, and the discrete Sobolev norms.
'''
from ..exceptions import PlateError, BasisMismatch
from .fields import SpectralField, NodalField, to_modal, to_nodal, pad_coefficients

import numpy as np
from scipy import fft


SOBOLEV_ORDERS = ( 0, 1, 2, 3 )


def apply_A_power(u, s):
    '''A^s u: coefficients scaled by lambda_k^s'''
    if s == 0:
        return u
    return SpectralField(u.basis, u.coeffs * u.basis.eigenvalues ** s)


def igamma_multiplier(basis, gamma):
    '''Modal multiplier of I_gamma = A^{-1} (gamma + A^{-1})^{-1}, i.e. 1 / (gamma lambda + 1)'''
    if not (gamma > 0):
        raise PlateError('I_gamma needs gamma > 0 (got {})'.format(gamma))
    return 1.0 / (gamma * basis.eigenvalues + 1.0)


def b_multiplier(basis, alpha, gamma):
    '''Modal multiplier of B = (alpha / gamma) I_gamma A, i.e. (alpha / gamma) lambda / (gamma lambda + 1)'''
    return (alpha / gamma) * basis.eigenvalues * igamma_multiplier(basis, gamma)


def apply_Igamma(u, gamma):
    return SpectralField(u.basis, u.coeffs * igamma_multiplier(u.basis, gamma))


def apply_B(u, alpha, gamma):
    '''
    B u with B := (alpha / gamma) (gamma + A^{-1})^{-1}.  Bounded: every multiplier
    lies in (0, alpha / gamma^2].
    '''
    return SpectralField(u.basis, u.coeffs * b_multiplier(u.basis, alpha, gamma))


def sobolev_norm(u, k):
    '''
    Discrete H^k norm ( sum (1 + lambda)^k |u_k|^2 )^{1/2}.  k = 0 is the L2 norm.
    '''
    if k not in SOBOLEV_ORDERS:
        raise PlateError('sobolev_norm supports k in {} (got {})'.format(SOBOLEV_ORDERS, k))
    weights = (1.0 + u.basis.eigenvalues) ** k
    return float(np.sqrt(np.sum(weights * u.coeffs ** 2)))



#####################################################
###   Derivatives on the nodal grid


def gradient(u):
    '''
    Exact spectral gradient sampled on the padded grid, one NodalField per axis.
    d/dx_i of the sine basis is a cosine along axis i; the cosine sums are
    evaluated with a type-I cosine transform on the grid extended by its two
    boundary nodes.
    '''
    basis = u.basis
    padded = pad_coefficients(u.coeffs, basis.grid_shape)
    components = []
    for axis in range(basis.dim):
        data = padded
        for other, L in enumerate(basis.lengths):
            if other == axis:
                data = _cosine_synthesis(data, axis, L, basis.grid_points[axis])
            else:
                data = fft.dst(data, type=1, axis=other) * (0.5 * np.sqrt(2.0 / L))
        components.append(NodalField(basis, data))
    return tuple(components)


def _cosine_synthesis(data, axis, L, m):
    '''sum_k (k pi / L) c_k sqrt(2/L) cos(k pi x_j / L) along one axis'''
    k = np.arange(1, m + 1) * np.pi / L
    shape = [ 1 ] * data.ndim
    shape[axis] = m
    scaled = data * k.reshape(shape)
    widths = [ ( 0, 0 ) ] * data.ndim
    widths[axis] = ( 1, 1 )
    extended = np.pad(scaled, widths)
    out = fft.dct(extended, type=1, axis=axis) * (0.5 * np.sqrt(2.0 / L))
    return np.take(out, np.arange(1, m + 1), axis=axis)


def grad_dot(grad_a, grad_b):
    '''Pointwise dot product of two gradients'''
    total = grad_a[0] * grad_b[0]
    for a, b in zip(grad_a[1:], grad_b[1:]):
        total = total + a * b
    return total


def divergence(q):
    '''
    Spectral divergence of a vector nodal field (one NodalField per axis).
    Component i is fitted in the least-squares sense by cosines along axis i
    and sines along the other axes (the span of d/dx_i of the sine basis),
    then differentiated exactly.  Gradients of sine fields are reproduced to
    round-off, so div(grad u) = -A u.
    '''
    basis = q[0].basis
    if len(q) != basis.dim:
        raise BasisMismatch('divergence needs {} components (got {})'.format(basis.dim, len(q)))
    total = np.zeros(basis.shape)
    for axis, component in enumerate(q):
        if component.basis != basis:
            raise BasisMismatch('flux components live on different bases')
        data = component.values
        for other, (L, m) in enumerate(zip(basis.lengths, basis.grid_points)):
            if other == axis:
                data = np.moveaxis(np.tensordot(basis.cosine_pinv[axis], data, axes=( 1, axis )), 0, axis)
            else:
                data = fft.dst(data, type=1, axis=other) * (0.5 * np.sqrt(2.0 / L) * L / (m + 1))
                data = np.take(data, np.arange(basis.modes[other]), axis=other)
        shape = [ 1 ] * basis.dim
        shape[axis] = basis.modes[axis]
        total = total - basis.wavenumbers[axis].reshape(shape) * data
    return SpectralField(basis, total)


def project_to_sine(f):
    '''
    Sine projection of nodal data that need not vanish on the boundary.
    Returns (SpectralField, norm of the discarded complement), the norm
    measured by grid quadrature.
    '''
    u = to_modal(f)
    rest = f - to_nodal(u)
    return u, float(np.sqrt((rest * rest).quadrature()))
