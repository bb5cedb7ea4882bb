from ..exceptions import PlateError
from ..util import get_option

from functools import cached_property
import itertools
import math
import numpy as np


#########################################################
###   Sine eigenbasis of the Dirichlet Laplacian


class Basis(object):
    '''
    The sine eigenbasis of A = -Laplacian with Dirichlet conditions on the box
    (0, L_1) x ... x (0, L_dim), truncated to N_i modes per axis.

    Eigenfunctions use the orthonormal convention

        phi_k(x) = prod_i sqrt(2 / L_i) sin(k_i pi x_i / L_i),     lambda_k = sum_i (k_i pi / L_i)^2

    Coefficient arrays have shape `modes` and are indexed lexicographically
    by k - 1.  The nodal grid has M_i = ceil(padding * N_i) + 1 interior points
    per axis, x_j = j L_i / (M_i + 1).

    Instances are immutable and compare by value.
    '''
    def __init__(self, dim, lengths, modes, padding=None):
        padding = get_option('PADDING') if padding is None else padding
        if dim not in ( 1, 2 ):
            raise PlateError('Basis dimension must be 1 or 2 (got {})'.format(dim))
        lengths = _as_tuple(lengths, dim)
        modes = _as_tuple(modes, dim)
        if any(not (L > 0) or not math.isfinite(L) for L in lengths):
            raise PlateError('Basis lengths must be positive and finite: {}'.format(lengths))
        if any(int(n) != n or n < 1 for n in modes):
            raise PlateError('Basis modes must be integers >= 1: {}'.format(modes))
        if not (padding >= 1):
            raise PlateError('Basis padding must be >= 1 (got {})'.format(padding))
        self.dim = dim
        self.lengths = tuple(float(L) for L in lengths)
        self.modes = tuple(int(n) for n in modes)
        self.padding = padding
        self.grid_points = tuple(int(math.ceil(padding * n)) + 1 for n in self.modes)

    def __repr__(self):
        return '<Basis dim={}, lengths={}, modes={}, padding={}>'.format(self.dim, self.lengths, self.modes, self.padding)

    def _key(self):
        return ( self.dim, self.lengths, self.modes, self.padding )

    def __eq__(self, other):
        return isinstance(other, Basis) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def shape(self):
        '''Shape of a modal coefficient array'''
        return self.modes

    @property
    def grid_shape(self):
        '''Shape of a nodal value array'''
        return self.grid_points

    @property
    def size(self):
        '''Number of modal coefficients'''
        return int(np.prod(self.modes))

    @cached_property
    def wavenumbers(self):
        '''Per-axis arrays of k pi / L for k = 1..N'''
        return tuple(_frozen(np.arange(1, n + 1) * np.pi / L) for n, L in zip(self.modes, self.lengths))

    @cached_property
    def eigenvalues(self):
        '''lambda_k on the modal array shape'''
        lam = np.zeros(self.modes)
        for axis, kk in enumerate(self.wavenumbers):
            shape = [ 1 ] * self.dim
            shape[axis] = kk.size
            lam = lam + (kk ** 2).reshape(shape)
        return _frozen(lam)

    @cached_property
    def axes(self):
        '''Interior grid coordinates per axis'''
        return tuple(_frozen(np.arange(1, m + 1) * L / (m + 1)) for m, L in zip(self.grid_points, self.lengths))

    def mesh(self):
        '''Coordinate arrays on the nodal grid shape (ij indexing)'''
        return np.meshgrid(*self.axes, indexing='ij')

    @property
    def cell_volume(self):
        '''Quadrature weight of one grid node'''
        return float(np.prod([ L / (m + 1) for m, L in zip(self.grid_points, self.lengths) ]))

    def multi_indices(self):
        '''Generator of the multi-indices k (1-based) in lexicographic order'''
        yield from itertools.product(*[ range(1, n + 1) for n in self.modes ])

    def enumerate_modes(self):
        '''
        List of (k, lambda_k) sorted by ascending eigenvalue.  Ties keep
        lexicographic order, so the enumeration is deterministic.
        '''
        lam = self.eigenvalues
        pairs = [ ( k, float(lam[tuple(i - 1 for i in k)]) ) for k in self.multi_indices() ]
        return sorted(pairs, key=lambda pair: pair[1])

    def with_padding(self, padding):
        '''Same modes on another nodal grid'''
        return Basis(self.dim, self.lengths, self.modes, padding)

    @cached_property
    def cosine_pinv(self):
        '''
        Per-axis least-squares inverses (N x M) of the sampled cosine columns
        sqrt(2/L) cos(k pi x_j / L), used to project flux components onto
        the derivative space of the sine basis.
        '''
        pinvs = []
        for n, L, x in zip(self.modes, self.lengths, self.axes):
            k = np.arange(1, n + 1)
            C = np.sqrt(2.0 / L) * np.cos(np.outer(x, k) * np.pi / L)
            pinvs.append(_frozen(np.linalg.pinv(C)))
        return tuple(pinvs)



def make_basis(dim, lengths, modes, padding=None):
    '''
    Builds the sine basis.  `lengths` and `modes` can be scalars (used for every axis)
    or sequences of length `dim`.

        basis = make_basis(1, 1.0, 4)
        basis.eigenvalues           # pi^2 * [1, 4, 9, 16]
    '''
    return Basis(dim, lengths, modes, padding)



#####################################################
###   Utility functions

def _as_tuple(value, dim):
    if np.ndim(value) == 0:
        return ( value, ) * dim
    value = tuple(value)
    if len(value) != dim:
        raise PlateError('Expected {} entries, got {}'.format(dim, len(value)))
    return value


def _frozen(arr):
    arr.setflags(write=False)
    return arr
