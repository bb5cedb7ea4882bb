from ..exceptions import ModelError

from dataclasses import dataclass, asdict, replace
import math


#########################################################
###   Normalized model coefficients


@dataclass(frozen=True)
class ModelParams(object):
    '''
    Coefficients of the normalized plate system

        w_tt - gamma Lap w_tt + Lap K(Lap w) + alpha Lap theta = 0
        beta theta_t + div q + sigma theta - alpha Lap w_t = 0
        tau q_t + q + eta grad theta = 0

    with kappa0 = K'(0) the base stiffness.  gamma = 0 or tau = 0 are the
    limiting models; only the spectral oracle accepts them.  alpha = 0
    decouples the plate from the heat equation.
    '''
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    eta: float = 1.0
    tau: float = 1.0
    sigma: float = 0.0
    kappa0: float = 1.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise ModelError('{} must be finite (got {})'.format(name, value))
        for name in ( 'beta', 'eta', 'kappa0' ):
            if not getattr(self, name) > 0:
                raise ModelError('{} must be positive (got {})'.format(name, getattr(self, name)))
        for name in ( 'alpha', 'gamma', 'tau', 'sigma' ):
            if getattr(self, name) < 0:
                raise ModelError('{} must be nonnegative (got {})'.format(name, getattr(self, name)))

    def require_time_domain(self):
        '''The simulator integrates the rotational-inertia / second-sound regime only'''
        if not (self.gamma > 0 and self.tau > 0):
            raise ModelError('time integration needs gamma > 0 and tau > 0 (got gamma={}, tau={})'.format(self.gamma, self.tau))
        return self

    def with_values(self, **kwargs):
        return replace(self, **kwargs)

    def as_dict(self):
        return asdict(self)



#########################################################
###   Physical plate parameters


@dataclass(frozen=True)
class PhysicalParams(object):
    '''
    SI inputs of the averaged plate model:

        rho h w_tt - (rho h^3 / 12) Lap w_tt + Lap K(Lap w) + D (1 + nu) / 2 Lap theta = 0
        (rho c / a_th) theta_t + div q + (12 / (a_th h^2)) (lambda0 + h lambda1 / 2) theta + 3 B a_th T0 Lap w_t = 0
        tau0 q_t + q - (lambda0 / a_th) grad theta = 0
    '''
    density: float
    thickness: float
    flexural_rigidity: float
    poisson_ratio: float
    heat_capacity: float
    thermal_expansion: float
    conductivity: float
    surface_conductivity: float
    relaxation_time: float
    reference_temperature: float
    bulk_modulus: float

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not (math.isfinite(value) and value > 0) and not (name == 'surface_conductivity' and value == 0):
                raise ModelError('physical parameter {} must be positive and finite (got {})'.format(name, value))
        if not self.poisson_ratio < 0.5:
            raise ModelError('poisson_ratio must be below 1/2 (got {})'.format(self.poisson_ratio))



@dataclass(frozen=True)
class NormalizationReport(object):
    '''
    Result of normalize_physical().  theta_scale is the common factor mu of the
    rescaling theta_phys = mu theta, q_phys = mu q (orientation chosen so the
    couplings carry the normalized signs); stiffness_scale maps the physical
    response to the normalized one, K = stiffness_scale * K_phys.
    '''
    params: ModelParams
    theta_scale: float
    stiffness_scale: float
    plate_coupling: float
    heat_coupling: float



def normalize_physical(p):
    '''
    Maps physical plate data to normalized coefficients.  The plate equation is
    divided by rho h, and theta, q are rescaled by a common factor mu so that the
    coefficient on Lap theta in the plate equation equals the one on Lap w_t in
    the heat equation.

        a1 = D (1 + nu) / (2 rho h),  a2 = 3 B a_th T0,  mu = sqrt(a2 / a1),  alpha = sqrt(a1 a2)
    '''
    if not isinstance(p, PhysicalParams):
        raise ModelError('normalize_physical expects PhysicalParams (got {})'.format(type(p).__name__))
    a1 = p.flexural_rigidity * (1.0 + p.poisson_ratio) / (2.0 * p.density * p.thickness)
    a2 = 3.0 * p.bulk_modulus * p.thermal_expansion * p.reference_temperature
    mu = math.sqrt(a2 / a1)
    stiffness_scale = 1.0 / (p.density * p.thickness)
    params = ModelParams(
        alpha=math.sqrt(a1 * a2),
        beta=p.density * p.heat_capacity / p.thermal_expansion,
        gamma=p.thickness ** 2 / 12.0,
        eta=p.conductivity / p.thermal_expansion,
        tau=p.relaxation_time,
        sigma=12.0 / (p.thermal_expansion * p.thickness ** 2) * (p.conductivity + p.thickness * p.surface_conductivity / 2.0),
        kappa0=p.flexural_rigidity * stiffness_scale,
    )
    return NormalizationReport(
        params=params,
        theta_scale=mu,
        stiffness_scale=stiffness_scale,
        plate_coupling=a1 * mu,
        heat_coupling=a2 / mu,
    )
