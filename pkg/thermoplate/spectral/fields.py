from ..exceptions import BasisMismatch
from ..util import ensure_finite

import numbers
import numpy as np
from scipy import fft


###############################################################
###   Modal and nodal fields


class _Field(object):
    '''Shared plumbing of SpectralField and NodalField: a basis plus a read-only array'''
    __slots__ = ( 'basis', '_data' )

    def __init__(self, basis, data, expected_shape, what):
        data = np.array(data, dtype=float)
        if data.shape != tuple(expected_shape):
            raise BasisMismatch('{} has shape {} but the basis expects {}'.format(what, data.shape, tuple(expected_shape)))
        ensure_finite(data, what)
        data.setflags(write=False)
        self.basis = basis
        self._data = data

    def _check(self, other):
        if not isinstance(other, self.__class__):
            raise TypeError('cannot combine {} with {}'.format(self.__class__.__name__, type(other).__name__))
        if other.basis != self.basis:
            raise BasisMismatch('{} and {} live on different bases'.format(self.basis, other.basis))

    def _new(self, data):
        return self.__class__(self.basis, data)

    def __add__(self, other):
        self._check(other)
        return self._new(self._data + other._data)

    def __sub__(self, other):
        self._check(other)
        return self._new(self._data - other._data)

    def __neg__(self):
        return self._new(-self._data)

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return self._new(self._data * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return self._new(self._data / other)
        return NotImplemented



class SpectralField(_Field):
    '''
    Modal coefficients of a scalar field in the sine basis.

        u = SpectralField(basis, coeffs)        # coeffs.shape == basis.shape
    '''
    __slots__ = ()

    def __init__(self, basis, coeffs):
        super().__init__(basis, coeffs, basis.shape, 'spectral coefficients')

    def __repr__(self):
        return '<SpectralField {} |u|={:.6g}>'.format(self.basis.modes, self.norm())

    @property
    def coeffs(self):
        return self._data

    @classmethod
    def zeros(cls, basis):
        return cls(basis, np.zeros(basis.shape))

    @classmethod
    def from_modes(cls, basis, modes):
        '''
        Builds a field from a {k: coefficient} mapping with 1-based multi-indices
        (an int is accepted for k in 1D).
        '''
        coeffs = np.zeros(basis.shape)
        for k, c in modes.items():
            k = ( k, ) if isinstance(k, numbers.Integral) else tuple(k)
            coeffs[tuple(i - 1 for i in k)] = c
        return cls(basis, coeffs)

    def norm(self):
        '''L2 norm (Parseval)'''
        return float(np.sqrt(np.sum(self._data ** 2)))

    def inner(self, other):
        '''L2 inner product'''
        self._check(other)
        return float(np.sum(self._data * other._data))



class NodalField(_Field):
    '''
    Values of a scalar field on the padded interior grid of the basis.
    Nodal fields multiply pointwise.
    '''
    __slots__ = ()

    def __init__(self, basis, values):
        super().__init__(basis, values, basis.grid_shape, 'nodal values')

    def __repr__(self):
        return '<NodalField {} max|u|={:.6g}>'.format(self.basis.grid_points, self.max_abs())

    @property
    def values(self):
        return self._data

    def __mul__(self, other):
        if isinstance(other, NodalField):
            self._check(other)
            return self._new(self._data * other._data)
        return super().__mul__(other)

    __rmul__ = __mul__

    def max_abs(self):
        return float(np.max(np.abs(self._data))) if self._data.size else 0.0

    def quadrature(self):
        '''Integral over the box by the rectangle rule on the interior grid'''
        return float(np.sum(self._data) * self.basis.cell_volume)



#####################################################
###   Transform pair (DST-I, orthonormal sine convention)


def to_nodal(u):
    '''
    Samples a modal field on the padded grid.  The coefficients are zero-padded
    to the grid size and synthesized with a type-I sine transform per axis.
    '''
    basis = u.basis
    data = pad_coefficients(u.coeffs, basis.grid_shape)
    for axis, L in enumerate(basis.lengths):
        data = fft.dst(data, type=1, axis=axis) * (0.5 * np.sqrt(2.0 / L))
    return NodalField(basis, data)


def to_modal(f):
    '''
    Projects nodal values onto the first N modes per axis.  Exact inverse of
    to_nodal on modal space; modes above the grid resolution fold back
    (aliasing), modes between N and M are discarded.
    '''
    basis = f.basis
    data = f.values
    for axis, (L, m) in enumerate(zip(basis.lengths, basis.grid_points)):
        data = fft.dst(data, type=1, axis=axis) * (0.5 * np.sqrt(2.0 / L) * L / (m + 1))
    return SpectralField(basis, truncate_coefficients(data, basis.shape))


def pad_coefficients(coeffs, shape):
    '''Zero-pads a coefficient array to `shape` (each axis at least as long)'''
    padded = np.zeros(shape)
    padded[tuple(slice(0, n) for n in coeffs.shape)] = coeffs
    return padded


def truncate_coefficients(coeffs, shape):
    '''Keeps the leading `shape` block of a coefficient array'''
    return np.array(coeffs[tuple(slice(0, n) for n in shape)])
