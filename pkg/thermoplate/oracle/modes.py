from ..exceptions import OracleError
from ..util import log

from collections import namedtuple
import logging
import numpy as np
import scipy.linalg


# t * ||M||_1 above which scaling and squaring loses the documented accuracy
EXPM_NORM_LIMIT = 1e8


#########################################################
###   Per-mode matrices of the linear system


class ModeMatrix(object):
    '''
    The linear system restricted to one eigenmode lambda of A, acting on
    (z, z_t, theta, p):

        z'     = v
        v'     = lambda (-kappa0 lambda z + alpha lambda theta) / (1 + gamma lambda)
        theta' = -(p + sigma theta + alpha v) / beta
        p'     = (eta lambda theta - p) / tau

    With tau = 0 the flux is eliminated (p = eta lambda theta, Fourier's law)
    and the matrix acts on (z, z_t, theta).
    '''
    def __init__(self, lam, params, matrix):
        self.lam = lam
        self.params = params
        matrix.setflags(write=False)
        self.matrix = matrix

    def __repr__(self):
        return '<ModeMatrix lambda={:.6g} {}x{}>'.format(self.lam, self.size, self.size)

    @property
    def size(self):
        return self.matrix.shape[0]

    @property
    def fourier_limit(self):
        return self.size == 3

    def trace(self):
        return float(np.trace(self.matrix))


def mode_matrix(lam, params, size=None):
    '''
    Assembles the mode matrix.  size defaults to 4 when tau > 0 and 3 when tau = 0;
    asking for the 4x4 form with tau = 0 raises OracleError.
    '''
    if not lam > 0:
        raise OracleError('mode_matrix needs lambda > 0 (got {})'.format(lam))
    size = size or (4 if params.tau > 0 else 3)
    if size == 4 and params.tau == 0:
        raise OracleError('the 4x4 mode matrix needs tau > 0; use the 3x3 Fourier form')
    if size not in ( 3, 4 ):
        raise OracleError('mode matrices are 3x3 or 4x4 (got {})'.format(size))
    a, b, g, e, s, k = params.alpha, params.beta, params.gamma, params.eta, params.sigma, params.kappa0
    inertia = 1.0 + g * lam
    if size == 4:
        t = params.tau
        matrix = np.array([
            [ 0.0, 1.0, 0.0, 0.0 ],
            [ -k * lam ** 2 / inertia, 0.0, a * lam ** 2 / inertia, 0.0 ],
            [ 0.0, -a / b, -s / b, -1.0 / b ],
            [ 0.0, 0.0, e * lam / t, -1.0 / t ],
        ])
    else:
        matrix = np.array([
            [ 0.0, 1.0, 0.0 ],
            [ -k * lam ** 2 / inertia, 0.0, a * lam ** 2 / inertia ],
            [ 0.0, -a / b, -(s + e * lam) / b ],
        ])
    return ModeMatrix(lam, params, matrix)


def mode_matrices(lams, params):
    '''
    The 4x4 mode matrices of many eigenvalues at once, shape (K, 4, 4).
    Row layout as in mode_matrix().
    '''
    if not params.tau > 0:
        raise OracleError('batched mode matrices need tau > 0')
    lam = np.asarray(lams, dtype=float).ravel()
    inertia = 1.0 + params.gamma * lam
    M = np.zeros(( lam.size, 4, 4 ))
    M[:, 0, 1] = 1.0
    M[:, 1, 0] = -params.kappa0 * lam ** 2 / inertia
    M[:, 1, 2] = params.alpha * lam ** 2 / inertia
    M[:, 2, 1] = -params.alpha / params.beta
    M[:, 2, 2] = -params.sigma / params.beta
    M[:, 2, 3] = -1.0 / params.beta
    M[:, 3, 2] = params.eta * lam / params.tau
    M[:, 3, 3] = -1.0 / params.tau
    return M



#########################################################
###   Spectrum and exact propagation


ModeSpectrum = namedtuple('ModeSpectrum', ( 'lam', 'eigenvalues', 'abscissa', 'char_residual' ))


def spectral_abscissa(m):
    '''
    Dense nonsymmetric eigensolve of a ModeMatrix.  Returns a ModeSpectrum whose
    eigenvalues are sorted (real part, then imaginary part, ascending) and whose
    char_residual is max |det(s I - M)| over the eigenvalues divided by ||M||^size,
    the cross-check against the characteristic polynomial.
    '''
    try:
        eigenvalues = scipy.linalg.eigvals(m.matrix)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise OracleError('eigensolve failed for {}: {}'.format(m, e))
    if not np.all(np.isfinite(eigenvalues)):
        raise OracleError('eigensolve returned non-finite values for {}'.format(m))
    eigenvalues = np.sort_complex(eigenvalues)
    char = np.poly(m.matrix)
    scale = max(np.linalg.norm(m.matrix, 2), 1.0) ** m.size
    residual = float(np.max(np.abs(np.polyval(char, eigenvalues)))) / scale
    return ModeSpectrum(m.lam, eigenvalues, float(np.max(eigenvalues.real)), residual)


def propagate_exact(u0, m, t):
    '''
    exp(t M) u0 by scaling and squaring with a Pade approximant (scipy.linalg.expm).
    `m` is a ModeMatrix or a square array.
    '''
    matrix = m.matrix if isinstance(m, ModeMatrix) else np.asarray(m, dtype=float)
    u0 = np.asarray(u0, dtype=float)
    if t < 0:
        raise OracleError('propagate_exact needs t >= 0 (got {})'.format(t))
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or u0.shape != matrix.shape[:1]:
        raise OracleError('propagate_exact needs a square matrix and a matching vector (got {} and {})'.format(matrix.shape, u0.shape))
    if t == 0:
        return u0.copy()
    norm = t * np.linalg.norm(matrix, 1)
    if norm > EXPM_NORM_LIMIT:
        raise OracleError('t ||M|| = {:.3g} exceeds the matrix exponential limit {:.3g}'.format(norm, EXPM_NORM_LIMIT))
    with np.errstate(all='ignore'):
        result = scipy.linalg.expm(t * matrix) @ u0
    if not np.all(np.isfinite(result)):
        raise OracleError('matrix exponential overflowed at t={}'.format(t))
    if log.isEnabledFor(logging.DEBUG):
        log.debug('propagate_exact t=%s ||M||_1=%.3g', t, norm / t)
    return result
