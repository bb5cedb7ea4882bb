from ..exceptions import BasisMismatch, PlateError
from ..util import get_option
from ..spectral import SpectralField

from dataclasses import dataclass, fields, replace
import enum
import math
import numpy as np


STATE_FIELDS = ( 'z', 'v', 'theta', 'p' )
JET_FIELDS = ( 'z', 'z_t', 'z_tt', 'z_ttt', 'theta', 'theta_t', 'theta_tt', 'theta_ttt', 'p', 'p_t', 'p_tt' )
SCHEMES = ( 'picard-midpoint', 'linear-midpoint', 'split-explicit' )


class HaltReason(enum.Enum):
    '''Why a simulation stopped'''
    Completed = 'Completed'
    Degeneracy = 'Degeneracy'
    BlowUp = 'BlowUp'
    PicardDivergence = 'PicardDivergence'

    def __str__(self):
        return self.value



def _check_shared_basis(obj, names):
    basis = getattr(obj, names[0]).basis
    for name in names:
        value = getattr(obj, name)
        if not isinstance(value, SpectralField):
            raise PlateError('{} must be a SpectralField (got {})'.format(name, type(value).__name__))
        if value.basis != basis:
            raise BasisMismatch('{} lives on {} but {} is on {}'.format(name, value.basis, names[0], basis))
    return basis



@dataclass(frozen=True)
class PlateState(object):
    '''
    The reduced unknowns (z, z_t, theta, p) at time t.  The boundary conditions
    z = theta = 0 hold by construction of the sine basis.
    '''
    t: float
    z: SpectralField
    v: SpectralField
    theta: SpectralField
    p: SpectralField

    def __post_init__(self):
        _check_shared_basis(self, STATE_FIELDS)
        if not math.isfinite(self.t):
            raise PlateError('state time must be finite (got {})'.format(self.t))

    @property
    def basis(self):
        return self.z.basis

    @property
    def z_t(self):
        return self.v

    @classmethod
    def zeros(cls, basis, t=0.0):
        zero = SpectralField.zeros(basis)
        return cls(t, zero, zero, zero, zero)

    def stack(self):
        '''Coefficients as a (modes, 4) array with columns z, v, theta, p'''
        return np.stack([ getattr(self, name).coeffs.ravel() for name in STATE_FIELDS ], axis=1)

    @classmethod
    def from_stack(cls, basis, t, u):
        '''Inverse of stack()'''
        return cls(t, *[ SpectralField(basis, u[:, i].reshape(basis.shape)) for i in range(4) ])

    def scaled(self, factor):
        return replace(self, **{ name: getattr(self, name) * factor for name in STATE_FIELDS })

    def with_time(self, t):
        return replace(self, t=t)



@dataclass(frozen=True)
class Jet(object):
    '''
    Time-derivative jet of the reduced unknowns: z to order 3,
    theta to order 3 and p to order 2.
    '''
    t: float
    z: SpectralField
    z_t: SpectralField
    z_tt: SpectralField
    z_ttt: SpectralField
    theta: SpectralField
    theta_t: SpectralField
    theta_tt: SpectralField
    theta_ttt: SpectralField
    p: SpectralField
    p_t: SpectralField
    p_tt: SpectralField

    def __post_init__(self):
        _check_shared_basis(self, JET_FIELDS)

    @property
    def basis(self):
        return self.z.basis

    @property
    def v(self):
        return self.z_t

    def state(self):
        return PlateState(self.t, self.z, self.z_t, self.theta, self.p)

    def as_dict(self):
        '''{name: nested coefficient lists}, in jet order'''
        return { name: getattr(self, name).coeffs.tolist() for name in JET_FIELDS }



@dataclass(frozen=True)
class SimOptions(object):
    '''
    Time integration settings.  Unset tolerances come from the thermoplate options.
    t_end - t0 must be a whole number of steps.
    '''
    dt: float
    t_end: float
    t0: float = 0.0
    scheme: str = 'picard-midpoint'
    picard_tol: float = None
    picard_max_iter: int = None
    degeneracy_eps: float = None
    blowup_threshold: float = None
    record_stride: int = 1
    signals: bool = None

    def __post_init__(self):
        defaults = {
            'picard_tol': get_option('PICARD_TOL'),
            'picard_max_iter': get_option('PICARD_MAX_ITER'),
            'degeneracy_eps': get_option('DEGENERACY_EPS'),
            'blowup_threshold': get_option('BLOWUP_THRESHOLD'),
            'signals': get_option('SIGNALS'),
        }
        for name, value in defaults.items():
            if getattr(self, name) is None:
                object.__setattr__(self, name, value)
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise PlateError('dt must be positive (got {})'.format(self.dt))
        if not self.t_end > self.t0:
            raise PlateError('t_end must exceed t0 (got t0={}, t_end={})'.format(self.t0, self.t_end))
        if self.scheme not in SCHEMES:
            raise PlateError('unknown scheme {} (known: {})'.format(self.scheme, ', '.join(SCHEMES)))
        if not (self.picard_tol > 0 and self.degeneracy_eps > 0 and self.blowup_threshold > 0):
            raise PlateError('picard_tol, degeneracy_eps and blowup_threshold must be positive')
        if self.picard_max_iter < 1 or self.record_stride < 1:
            raise PlateError('picard_max_iter and record_stride must be at least 1')
        span = (self.t_end - self.t0) / self.dt
        if abs(span - round(span)) > 1e-9 * max(span, 1.0):
            raise PlateError('t_end - t0 = {} is not a whole number of steps of dt = {}'.format(self.t_end - self.t0, self.dt))

    @property
    def steps(self):
        return int(round((self.t_end - self.t0) / self.dt))

    def time(self, n):
        '''t_n = t0 + n dt, computed directly'''
        return self.t0 + n * self.dt

    def as_dict(self):
        return { f.name: getattr(self, f.name) for f in fields(self) }
