"""
The remainder calculus on the padded nodal grid.  Every operator is expanded
by the chain rule, -Lap g(z) = g'(z) A z - g''(z) |grad z|^2, evaluated
pointwise and projected back to the sine basis.
"""
from ..exceptions import BasisMismatch
from ..spectral import SpectralField, NodalField, to_modal, to_nodal, apply_A_power, gradient, grad_dot
from ..util import ensure_finite

import numpy as np


class _Jet(object):
    '''Nodal values, A-image and gradient of one field'''
    def __init__(self, u):
        self.values = to_nodal(u).values
        self.A = to_nodal(apply_A_power(u, 1)).values
        self.grad = tuple(g.values for g in gradient(u))

    def dot(self, other):
        return grad_dot(self.grad, other.grad)


def _same_basis(*fields):
    basis = fields[0].basis
    for f in fields[1:]:
        if f.basis != basis:
            raise BasisMismatch('remainder calculus needs fields on one basis')
    return basis


def _project(basis, values, what):
    return to_modal(NodalField(basis, ensure_finite(values, what)))


def apply_AF(z, nl):
    '''A F(z) = F'(z) A z - F''(z) |grad z|^2'''
    if nl.linear:
        return SpectralField.zeros(z.basis)
    Z = _Jet(z)
    with np.errstate(all='ignore'):
        values = nl.remainder(1, Z.values) * Z.A - nl.remainder(2, Z.values) * Z.dot(Z)
    return _project(z.basis, values, 'AF')


def apply_AG(z, z_t, nl):
    """
    A G(z) = A (F'(z) z_t)
           = F'(z) A z_t + F''(z) z_t A z - F'''(z) |grad z|^2 z_t - 2 F''(z) grad z . grad z_t
    """
    basis = _same_basis(z, z_t)
    if nl.linear:
        return SpectralField.zeros(basis)
    Z, V = _Jet(z), _Jet(z_t)
    with np.errstate(all='ignore'):
        F1, F2, F3 = ( nl.remainder(j, Z.values) for j in ( 1, 2, 3 ) )
        values = F1 * V.A + F2 * V.values * Z.A - F3 * Z.dot(Z) * V.values - 2.0 * F2 * Z.dot(V)
    return _project(basis, values, 'AG')


def apply_AH(z, z_t, z_tt, nl):
    """
    A H(z) = A (F''(z) z_t^2) + A (F'(z) z_tt) with

        A (F''(z) z_t^2) = -F''''(z) |grad z|^2 z_t^2 + F'''(z) z_t^2 A z - 4 F'''(z) z_t grad z . grad z_t
                           - 2 F''(z) |grad z_t|^2 + 2 F''(z) z_t A z_t
        A (F'(z) z_tt)   = F'(z) A z_tt + F''(z) z_tt A z - F'''(z) |grad z|^2 z_tt - 2 F''(z) grad z . grad z_tt
    """
    basis = _same_basis(z, z_t, z_tt)
    if nl.linear:
        return SpectralField.zeros(basis)
    Z, V, W = _Jet(z), _Jet(z_t), _Jet(z_tt)
    with np.errstate(all='ignore'):
        F1, F2, F3, F4 = ( nl.remainder(j, Z.values) for j in ( 1, 2, 3, 4 ) )
        gz2 = Z.dot(Z)
        first = (-F4 * gz2 * V.values ** 2 + F3 * V.values ** 2 * Z.A - 4.0 * F3 * V.values * Z.dot(V)
                 - 2.0 * F2 * V.dot(V) + 2.0 * F2 * V.values * V.A)
        second = F1 * W.A + F2 * W.values * Z.A - F3 * gz2 * W.values - 2.0 * F2 * Z.dot(W)
    return _project(basis, first + second, 'AH')


def apply_AF_direct(z, nl):
    """
    The second route to A F(z): F evaluated on the nodal grid, projected to the
    sine basis and multiplied by lambda.  Agrees with apply_AF up to the aliasing
    of the padded grid.
    """
    if nl.linear:
        return SpectralField.zeros(z.basis)
    values = to_nodal(z).values
    with np.errstate(all='ignore'):
        F = nl.remainder(0, values)
    return apply_A_power(_project(z.basis, F, 'F'), 1)
