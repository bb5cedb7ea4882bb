from ..exceptions import DiagnosticsError
from ..model import calculus
from ..spectral import sobolev_norm

from dataclasses import dataclass, field
from collections import namedtuple
import numpy as np


E1_TERMS = ( 'kinetic', 'rotational', 'strain', 'thermal', 'flux' )


#########################################################
###   Weighted energies


@dataclass(frozen=True)
class EnergyReport(object):
    '''
    Energies of one jet.  E = E1 + E2 + E3; Y collects the higher-order norms
    not controlled by E and X = E + Y, so X >= E >= 0 and Y >= 0 always hold.
    `topological` is the plain product norm of the jet (z in Z3, theta in T3, p in P3),
    equivalent to X.
    '''
    t: float
    E1: float
    E2: float
    E3: float
    E: float
    X: float
    Y: float
    topological: float
    ellipticity_min: float = None
    E1_terms: dict = field(default_factory=dict)

    def as_row(self):
        return ( self.t, self.E1, self.E2, self.E3, self.E, self.X, self.Y, self.ellipticity_min )


def _weighted(u, weights):
    return float(np.sum(weights * u.coeffs ** 2))


def energy_terms(z, v, theta, p, params):
    '''
    The five terms of a level energy:

        1/2 (|A^{-1/2} v|^2 + gamma |v|^2 + kappa0 |A^{1/2} z|^2 + beta |A^{1/2} theta|^2 + tau/eta |p|^2)
    '''
    lam = z.basis.eigenvalues
    return {
        'kinetic': 0.5 * _weighted(v, 1.0 / lam),
        'rotational': 0.5 * params.gamma * _weighted(v, 1.0),
        'strain': 0.5 * params.kappa0 * _weighted(z, lam),
        'thermal': 0.5 * params.beta * _weighted(theta, lam),
        'flux': 0.5 * params.tau / params.eta * _weighted(p, 1.0),
    }


def level1_energy(state, params):
    '''E1 of anything carrying z, z_t, theta and p (a PlateState or a Jet)'''
    return sum(energy_terms(state.z, state.z_t, state.theta, state.p, params).values())


def energy_levels(jet, params, ellipticity_min=None):
    '''EnergyReport of a complete jet'''
    missing = [ name for name in ( 'z_tt', 'z_ttt', 'theta_t', 'theta_tt', 'theta_ttt', 'p_t', 'p_tt' ) if getattr(jet, name, None) is None ]
    if missing:
        raise DiagnosticsError('energy_levels needs a complete jet (missing {})'.format(', '.join(missing)))
    terms = energy_terms(jet.z, jet.z_t, jet.theta, jet.p, params)
    E1 = sum(terms.values())
    E2 = sum(energy_terms(jet.z_t, jet.z_tt, jet.theta_t, jet.p_t, params).values())
    E3 = sum(energy_terms(jet.z_tt, jet.z_ttt, jet.theta_tt, jet.p_tt, params).values())
    E = E1 + E2 + E3
    Y = (sobolev_norm(jet.z, 3) ** 2 + sobolev_norm(jet.z_t, 2) ** 2
         + sobolev_norm(jet.theta, 3) ** 2 + sobolev_norm(jet.theta_t, 2) ** 2 + sobolev_norm(jet.theta_ttt, 0) ** 2
         + sobolev_norm(jet.p, 2) ** 2 + sobolev_norm(jet.p_t, 1) ** 2)
    topological = sum(
        sobolev_norm(u, 3 - j) ** 2
        for fields in ( ( jet.z, jet.z_t, jet.z_tt, jet.z_ttt ), ( jet.theta, jet.theta_t, jet.theta_tt, jet.theta_ttt ) )
        for j, u in enumerate(fields)
    ) + sum(sobolev_norm(u, 2 - j) ** 2 for j, u in enumerate(( jet.p, jet.p_t, jet.p_tt )))
    return EnergyReport(
        t=jet.t, E1=E1, E2=E2, E3=E3, E=E, X=E + Y, Y=Y, topological=topological,
        ellipticity_min=ellipticity_min, E1_terms=terms,
    )


def scale_to_energy(state, params, target):
    '''The state multiplied by the factor that makes E1 equal `target`'''
    if not target > 0:
        raise DiagnosticsError('target energy must be positive (got {})'.format(target))
    current = level1_energy(state, params)
    if not current > 0:
        raise DiagnosticsError('cannot rescale a state with zero energy')
    return state.scaled(float(np.sqrt(target / current)))



#########################################################
###   Discrete dissipation identity


BalanceStep = namedtuple('BalanceStep', ( 't', 'dE1', 'dissipation', 'forcing', 'residual' ))


def energy_balance_per_step(before, after, params, nl):
    '''
    The discrete level-1 balance of one midpoint step,

        E1(after) - E1(before) = -dt (|p_mid|^2 / eta + sigma |A^{1/2} theta_mid|^2) + dt <A F(z_mid), v_mid>

    returned with residual = dE1 + dissipation - forcing.
    '''
    dt = after.t - before.t
    if not dt > 0:
        raise DiagnosticsError('energy balance needs increasing times (got {} -> {})'.format(before.t, after.t))
    mid = [ (getattr(before, name) + getattr(after, name)) * 0.5 for name in ( 'z', 'z_t', 'theta', 'p' ) ]
    z_mid, v_mid, theta_mid, p_mid = mid
    lam = z_mid.basis.eigenvalues
    dissipation = dt * (_weighted(p_mid, 1.0) / params.eta + params.sigma * _weighted(theta_mid, lam))
    forcing = 0.0 if nl.linear else dt * calculus.apply_AF(z_mid, nl).inner(v_mid)
    dE1 = level1_energy(after, params) - level1_energy(before, params)
    return BalanceStep(after.t, dE1, dissipation, forcing, dE1 + dissipation - forcing)


def dissipation_residual(series, params, nl, floor=1e-300):
    '''
    Relative residual of the level-1 energy identity over a trajectory,

        |E1(T) + Q_p - E1(0) - Q_F| / max(E1(0), floor)

    with Q_p = sum dt |p_mid|^2 / eta and Q_F = sum dt <A F(z_mid), v_mid>, the
    midpoint rule on consecutive samples.  `series` holds (t, state) pairs with
    uniform spacing; states are PlateState or Jet.  Valid for sigma = 0 only.
    '''
    if params.sigma != 0:
        raise DiagnosticsError('the level-1 energy identity holds for sigma = 0 only (got sigma={})'.format(params.sigma))
    series = list(series)
    if len(series) < 2:
        raise DiagnosticsError('dissipation_residual needs at least two samples')
    times = np.array([ t for t, _ in series ])
    steps = np.diff(times)
    if not (np.all(steps > 0) and np.max(np.abs(steps - steps[0])) <= 1e-9 * steps[0]):
        raise DiagnosticsError('dissipation_residual needs uniformly spaced samples')
    Q_p = 0.0
    Q_F = 0.0
    for ( _, before ), ( _, after ) in zip(series[:-1], series[1:]):
        step = energy_balance_per_step(before, after, params, nl)
        Q_p += step.dissipation
        Q_F += step.forcing
    E1_start = level1_energy(series[0][1], params)
    E1_end = level1_energy(series[-1][1], params)
    return abs(E1_end + Q_p - E1_start - Q_F) / max(E1_start, floor)
