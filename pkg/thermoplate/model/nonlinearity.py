from ..exceptions import ModelError, NonFiniteError
from ..spectral import NodalField, to_nodal
from ..util import log, ensure_finite, get_option

from collections import namedtuple
import numpy as np
from numpy.polynomial import Polynomial


ORIGIN_TOL = 1e-12


#########################################################
###   The scalar response in the z-frame


class Nonlinearity(object):
    """
    The hypoelastic response stored in the z-frame, N(z) = -K(-z), together
    with its first four derivatives.  With z = A w the reduced plate equation reads

        (A^{-1} + gamma) z_tt + A N(z) - alpha A theta = 0

    and the remainder F(z) = kappa0 z - N(z) collects everything beyond the
    linear stiffness kappa0 = N'(0).

    `derivatives` is a sequence of five vectorized callables (N, N', N'', N''', N'''').
    """
    def __init__(self, name, derivatives, kappa0_hint=None, require_inflection=False, sample_range=1.0, linear=None):
        derivatives = tuple(derivatives)
        if len(derivatives) != 5 or not all(callable(d) for d in derivatives):
            raise ModelError('Nonlinearity {} needs five derivative evaluators (N through N\'\'\'\')'.format(name))
        self.name = name
        self._derivatives = derivatives
        origin = [ float(d(np.float64(0.0))) for d in derivatives ]
        if not all(np.isfinite(origin)):
            raise ModelError('Nonlinearity {} is not finite at z = 0'.format(name))
        if abs(origin[0]) > ORIGIN_TOL:
            raise ModelError('Nonlinearity {} needs N(0) = 0 (got {})'.format(name, origin[0]))
        if not origin[1] > 0:
            raise ModelError('Nonlinearity {} needs N\'(0) > 0 (got {})'.format(name, origin[1]))
        if kappa0_hint is not None and abs(origin[1] - kappa0_hint) > ORIGIN_TOL * max(1.0, abs(kappa0_hint)):
            raise ModelError('Nonlinearity {} has N\'(0) = {} but kappa0 = {} was requested'.format(name, origin[1], kappa0_hint))
        if require_inflection and abs(origin[2]) > ORIGIN_TOL:
            raise ModelError('Nonlinearity {} needs N\'\'(0) = 0 (got {})'.format(name, origin[2]))
        self.kappa0 = origin[1]
        samples = np.linspace(-sample_range, sample_range, 201)
        with np.errstate(all='ignore'):
            sampled = [ np.asarray(d(samples), dtype=float) for d in derivatives ]
        if not all(np.all(np.isfinite(s)) for s in sampled):
            raise ModelError('Nonlinearity {} is not finite on [-{}, {}]'.format(name, sample_range, sample_range))
        if linear is None:
            linear = all(np.all(s == 0.0) for s in sampled[2:]) and np.allclose(sampled[1], self.kappa0, rtol=0, atol=ORIGIN_TOL)
        self.linear = bool(linear)

    def __repr__(self):
        return '<Nonlinearity {} kappa0={:.6g}{}>'.format(self.name, self.kappa0, ' (linear)' if self.linear else '')

    def derivative(self, order, z):
        '''N^(order)(z), elementwise'''
        if order not in range(5):
            raise ModelError('derivative order must be 0..4 (got {})'.format(order))
        return self._derivatives[order](np.asarray(z, dtype=float))

    def __call__(self, z):
        return self.derivative(0, z)

    def response_K(self, z):
        '''K(z) = -N(-z)'''
        return -self.derivative(0, -np.asarray(z, dtype=float))

    def remainder(self, order, z):
        """
        F^(order)(z) with F(z) = kappa0 z - N(z):

            F = kappa0 z - N,   F' = kappa0 - N',   F^(j) = -N^(j) for j >= 2
        """
        z = np.asarray(z, dtype=float)
        if self.linear:
            return np.zeros_like(z)
        if order == 0:
            return self.kappa0 * z - self.derivative(0, z)
        if order == 1:
            return self.kappa0 - self.derivative(1, z)
        return -self.derivative(order, z)



def nonlinearity_from_K(K_derivatives, kappa0_hint=None, name='custom', require_inflection=False, sample_range=1.0):
    """
    Wires a response given in the plate frame, K and its derivatives to order 4,
    into the z-frame: N^(j)(z) = (-1)^(j+1) K^(j)(-z).
    """
    K_derivatives = tuple(K_derivatives)
    if len(K_derivatives) != 5:
        raise ModelError('nonlinearity_from_K needs K and four derivatives (got {} callables)'.format(len(K_derivatives)))
    if abs(float(K_derivatives[0](np.float64(0.0)))) > ORIGIN_TOL:
        raise ModelError('{} needs K(0) = 0'.format(name))

    def flip(j, Kj):
        sign = (-1.0) ** (j + 1)
        return lambda z: sign * Kj(-np.asarray(z, dtype=float))

    return Nonlinearity(name, [ flip(j, Kj) for j, Kj in enumerate(K_derivatives) ],
                        kappa0_hint=kappa0_hint, require_inflection=require_inflection, sample_range=sample_range)



def polynomial_nonlinearity(coefficients, frame='K', name=None, require_inflection=False):
    """
    A polynomial response from ascending coefficients [c0, c1, c2, ...].
    frame='K' reads them as K(z) = sum c_i z^i, frame='N' as N(z) directly.
    """
    if frame not in ( 'K', 'N' ):
        raise ModelError('polynomial frame must be "K" or "N" (got {})'.format(frame))
    coefficients = np.asarray(coefficients, dtype=float)
    if frame == 'K':
        # N(z) = -K(-z) flips the sign of the even powers
        signs = np.array([ (-1.0) ** (i + 1) for i in range(len(coefficients)) ])
        coefficients = coefficients * signs
    poly = Polynomial(coefficients).trim()
    name = name or 'polynomial {}'.format(poly)
    return Nonlinearity(name, [ poly.deriv(j) if j else poly for j in range(5) ],
                        require_inflection=require_inflection, linear=poly.degree() <= 1)



#########################################################
###   Presets (registered by decorator)

PRESETS = {}

def nonlinearity_preset(name):
    '''Registers a preset builder: func(kappa0, coefficient, cubic) -> Nonlinearity'''
    def decorator(func):
        PRESETS[name] = func
        return func
    return decorator


@nonlinearity_preset('linear')
def linear_preset(kappa0=1.0, coefficient=0.0, cubic=0.0):
    '''K(z) = kappa0 z'''
    return polynomial_nonlinearity([ 0.0, kappa0 ], name='linear')


@nonlinearity_preset('cubic-stiffening')
def cubic_stiffening_preset(kappa0=1.0, coefficient=1.0, cubic=0.0):
    '''K(z) = kappa0 z + c z^3'''
    return polynomial_nonlinearity([ 0.0, kappa0, 0.0, coefficient ], name='cubic-stiffening', require_inflection=True)


@nonlinearity_preset('cubic-softening')
def cubic_softening_preset(kappa0=1.0, coefficient=1.0, cubic=0.0):
    '''K(z) = kappa0 z - c z^3'''
    return polynomial_nonlinearity([ 0.0, kappa0, 0.0, -coefficient ], name='cubic-softening', require_inflection=True)


@nonlinearity_preset('quadratic')
def quadratic_preset(kappa0=1.0, coefficient=1.0, cubic=0.0):
    '''K(z) = kappa0 z - c z^2 + d z^3, the lower-order response that breaks K''(0) = 0'''
    return polynomial_nonlinearity([ 0.0, kappa0, -coefficient, cubic ], name='quadratic')


def preset(name, kappa0=1.0, coefficient=1.0, cubic=0.0):
    try:
        builder = PRESETS[name]
    except KeyError:
        raise ModelError('unknown nonlinearity preset {} (known: {})'.format(name, ', '.join(sorted(PRESETS))))
    return builder(kappa0=kappa0, coefficient=coefficient, cubic=cubic)



#########################################################
###   Pointwise remainders F, G = dF/dt, H = dG/dt


def _values(x):
    if isinstance(x, NodalField):
        return x.values, x.basis
    return np.asarray(x, dtype=float), None


def _pointwise(what, basis, *arrays):
    for a in arrays:
        ensure_finite(a, what)
    def wrap(result):
        ensure_finite(result, what)
        return NodalField(basis, result) if basis is not None else result
    return wrap


def remainder_F(nl, z):
    '''F(z) = kappa0 z - N(z), pointwise on nodal values (array or NodalField)'''
    z, basis = _values(z)
    wrap = _pointwise('F input', basis, z)
    with np.errstate(all='ignore'):
        return wrap(nl.remainder(0, z))


def remainder_G(nl, z, z_t):
    '''G = F'(z) z_t'''
    z, basis = _values(z)
    z_t, _ = _values(z_t)
    wrap = _pointwise('G input', basis, z, z_t)
    with np.errstate(all='ignore'):
        return wrap(nl.remainder(1, z) * z_t)


def remainder_H(nl, z, z_t, z_tt):
    '''H = F''(z) z_t^2 + F'(z) z_tt'''
    z, basis = _values(z)
    z_t, _ = _values(z_t)
    z_tt, _ = _values(z_tt)
    wrap = _pointwise('H input', basis, z, z_t, z_tt)
    with np.errstate(all='ignore'):
        return wrap(nl.remainder(2, z) * z_t ** 2 + nl.remainder(1, z) * z_tt)



#########################################################
###   Ellipticity and assumption reports


def ellipticity_min(z, nl):
    '''min N'(z) over the padded nodal grid; the coefficient a(z) = N'(z) of the frozen problem'''
    values = to_nodal(z).values
    with np.errstate(all='ignore'):
        a = nl.derivative(1, values)
    if not np.all(np.isfinite(a)):
        raise NonFiniteError('ellipticity')
    return float(np.min(a)) if a.size else nl.kappa0


AssumptionCheck = namedtuple('AssumptionCheck', ( 'name', 'passed', 'worst', 'at' ))


class AssumptionReport(object):
    '''Pass/fail per structural condition on the response, each with its worst sample'''
    def __init__(self, name, rho, checks):
        self.name = name
        self.rho = rho
        self.checks = tuple(checks)

    def __repr__(self):
        return '<AssumptionReport {} rho={} {}>'.format(self.name, self.rho, 'pass' if self.passed else 'FAIL: ' + ', '.join(self.failed()))

    def __getitem__(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failed(self):
        return [ c.name for c in self.checks if not c.passed ]


def check_assumptions(nl, rho, samples=None):
    """
    Samples N, N', N'' on [-rho, rho] and reports:

        origin         N(0) = 0
        stiffness      N'(0) > 0
        inflection     N''(0) = 0
        positivity     N'(z) > 0 for |z| <= rho
        finite         N..N'''' finite on the samples
    """
    if not rho > 0:
        raise ModelError('check_assumptions needs rho > 0 (got {})'.format(rho))
    samples = samples or get_option('ASSUMPTION_SAMPLES')
    z = np.linspace(-rho, rho, samples)
    with np.errstate(all='ignore'):
        values = [ np.asarray(nl.derivative(j, z), dtype=float) for j in range(5) ]
        origin = [ float(nl.derivative(j, 0.0)) for j in range(3) ]
    finite = np.all([ np.isfinite(v) for v in values ], axis=0)
    slope = np.where(np.isfinite(values[1]), values[1], -np.inf)
    i = int(np.argmin(slope))
    checks = [
        AssumptionCheck('origin', abs(origin[0]) <= ORIGIN_TOL, abs(origin[0]), 0.0),
        AssumptionCheck('stiffness', origin[1] > 0, origin[1], 0.0),
        AssumptionCheck('inflection', abs(origin[2]) <= ORIGIN_TOL, abs(origin[2]), 0.0),
        AssumptionCheck('positivity', bool(slope[i] > 0), float(slope[i]), float(z[i])),
        AssumptionCheck('finite', bool(np.all(finite)), int(np.count_nonzero(~finite)), float(z[int(np.argmin(finite))]) if not np.all(finite) else 0.0),
    ]
    report = AssumptionReport(nl.name, rho, checks)
    if not report.passed:
        log.info('nonlinearity %s fails %s on [-%s, %s]', nl.name, ', '.join(report.failed()), rho, rho)
    return report


GrowthBounds = namedtuple('GrowthBounds', ( 'M', 'c1', 'c2', 'c3', 'c4' ))


def growth_bounds(nl, M, samples=None):
    """
    Sampled constants of the cubic growth conditions on [-M, M]:

        |F'(z)| <= c1 |z|^2,   |F''(z)| <= c2 |z|,   |F'''(z)| <= c3,   |F''''(z)| <= c4
    """
    if not M > 0:
        raise ModelError('growth_bounds needs M > 0 (got {})'.format(M))
    samples = samples or get_option('ASSUMPTION_SAMPLES')
    z = np.linspace(-M, M, samples)
    z = z[z != 0.0]
    with np.errstate(all='ignore'):
        F = [ np.abs(nl.remainder(j, z)) for j in range(1, 5) ]
    for values in F:
        ensure_finite(values, 'growth bounds')
    az = np.abs(z)
    return GrowthBounds(
        M=M,
        c1=float(np.max(F[0] / az ** 2)),
        c2=float(np.max(F[1] / az)),
        c3=float(np.max(F[2])),
        c4=float(np.max(F[3])),
    )
