'''
Time-derivative jets of the reduced system

    (A^{-1} + gamma) z_tt + kappa0 A z - alpha A theta = A F(z)
    beta theta_t + p + sigma theta + alpha z_t = 0
    tau p_t + p - eta A theta = 0

solved mode by mode.  Higher orders differentiate the same relations in time,
with A G(z) = d/dt A F(z) supplying the nonlinear part of z_ttt.
'''
from ..exceptions import DegeneracyError
from ..util import get_option
from ..model import calculus
from ..model.nonlinearity import ellipticity_min
from ..spectral import SpectralField
from .state import PlateState, Jet


def inertia_multiplier(basis, params):
    '''lambda / (1 + gamma lambda): the modal inverse of A^{-1} + gamma'''
    lam = basis.eigenvalues
    return lam / (1.0 + params.gamma * lam)


def plate_acceleration(z, theta, AF, params):
    '''z_tt = (A^{-1} + gamma)^{-1} (A F - kappa0 A z + alpha A theta)'''
    lam = z.basis.eigenvalues
    coeffs = inertia_multiplier(z.basis, params) * (AF.coeffs - params.kappa0 * lam * z.coeffs + params.alpha * lam * theta.coeffs)
    return SpectralField(z.basis, coeffs)


def heat_rate(v, theta, p, params):
    '''theta_t = -(p + sigma theta + alpha z_t) / beta'''
    return (p + params.sigma * theta + params.alpha * v) * (-1.0 / params.beta)


def flux_rate(theta, p, params):
    '''p_t = (eta A theta - p) / tau'''
    lam = theta.basis.eigenvalues
    return SpectralField(theta.basis, (params.eta * lam * theta.coeffs - p.coeffs) / params.tau)


def _check_ellipticity(state, nl, degeneracy_eps):
    eps = get_option('DEGENERACY_EPS') if degeneracy_eps is None else degeneracy_eps
    a = ellipticity_min(state.z, nl)
    if a <= eps:
        raise DegeneracyError(state.t, a, 'min N\'(z) = {:.6g} <= {:.3g} at t={:.6g}'.format(a, eps, state.t))
    return a


def runtime_jet(state, params, nl, degeneracy_eps=None):
    '''The jet of a PlateState, every derivative obtained by solving the equations'''
    params.require_time_domain()
    _check_ellipticity(state, nl, degeneracy_eps)
    z, v, theta, p = state.z, state.v, state.theta, state.p
    lam = z.basis.eigenvalues

    z_tt = plate_acceleration(z, theta, calculus.apply_AF(z, nl), params)
    theta_t = heat_rate(v, theta, p, params)
    p_t = flux_rate(theta, p, params)

    AG = calculus.apply_AG(z, v, nl)
    z_ttt = SpectralField(z.basis, inertia_multiplier(z.basis, params) * (AG.coeffs - params.kappa0 * lam * v.coeffs + params.alpha * lam * theta_t.coeffs))
    theta_tt = heat_rate(z_tt, theta_t, p_t, params)
    p_tt = flux_rate(theta_t, p_t, params)
    theta_ttt = heat_rate(z_ttt, theta_tt, p_tt, params)

    return Jet(
        t=state.t,
        z=z, z_t=v, z_tt=z_tt, z_ttt=z_ttt,
        theta=theta, theta_t=theta_t, theta_tt=theta_tt, theta_ttt=theta_ttt,
        p=p, p_t=p_t, p_tt=p_tt,
    )


def initial_jet(z0, z1, theta0, p0, params, nl, degeneracy_eps=None, t0=0.0):
    '''
    The compatibility jet of the initial data: z^0..z^3, theta^0..theta^3, p^0..p^2.
    Raises DegeneracyError when the initial ellipticity is not positive.
    '''
    return runtime_jet(PlateState(t0, z0, z1, theta0, p0), params, nl, degeneracy_eps)
