'''
Run configuration files: one level of typed YAML sections validated by pydantic.

    basis:         dim, lengths, modes, padding
    params:        alpha, beta, gamma, eta, tau, sigma, kappa0      (or)
    physical:      the PhysicalParams fields in SI units
    nonlinearity:  preset, coefficient, cubic, rho, require_assumptions
    initial:       preset, amplitude, mode, seed, decay, energy, z, v, theta, p, flux_gradient
    sim:           dt, t_end, t0, scheme, picard_tol, picard_max_iter, degeneracy_eps, blowup_threshold
    output:        directory, stride, precision
    spectrum:      k_max
    sweep:         gammas, taus, k_max, length, drift_ratio
'''
from .diagnostics import scale_to_energy
from .dynamics import PlateState, SimOptions, SCHEMES, gradient_flux
from .exceptions import ConfigError, PlateError
from .model import ModelParams, PhysicalParams, normalize_physical, preset, check_assumptions, PRESETS
from .spectral import SpectralField, NodalField, make_basis, project_to_sine
from .util import canonical_json, get_option, log

from collections import namedtuple
from typing import Dict, List, Literal, Optional, Union
import math
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, ValidationError, field_validator, model_validator
import yaml


InitialData = namedtuple('InitialData', ( 'state', 'q0', 'p_complement' ))
INITIAL_PRESETS = ( 'none', 'single-mode', 'random' )


class _Section(BaseModel):
    model_config = ConfigDict(extra='forbid')



class BasisSection(_Section):
    dim: Literal[1, 2] = 1
    lengths: Union[PositiveFloat, List[PositiveFloat]] = 1.0
    modes: Union[PositiveInt, List[PositiveInt]] = 32
    padding: Optional[float] = Field(default=None, ge=1)


class ParamsSection(_Section):
    alpha: float = Field(default=1.0, ge=0)
    beta: PositiveFloat = 1.0
    gamma: float = Field(default=1.0, ge=0)
    eta: PositiveFloat = 1.0
    tau: float = Field(default=1.0, ge=0)
    sigma: float = Field(default=0.0, ge=0)
    kappa0: PositiveFloat = 1.0


class PhysicalSection(_Section):
    density: PositiveFloat
    thickness: PositiveFloat
    flexural_rigidity: PositiveFloat
    poisson_ratio: PositiveFloat
    heat_capacity: PositiveFloat
    thermal_expansion: PositiveFloat
    conductivity: PositiveFloat
    surface_conductivity: float = Field(ge=0)
    relaxation_time: PositiveFloat
    reference_temperature: PositiveFloat
    bulk_modulus: PositiveFloat


class NonlinearitySection(_Section):
    preset: str = 'linear'
    coefficient: float = 1.0
    cubic: float = 0.0
    rho: PositiveFloat = 1.0
    require_assumptions: bool = False

    @field_validator('preset')
    @classmethod
    def known_preset(cls, value):
        if value not in PRESETS:
            raise ValueError('unknown nonlinearity preset {} (known: {})'.format(value, ', '.join(sorted(PRESETS))))
        return value


class InitialSection(_Section):
    preset: Literal[INITIAL_PRESETS] = 'none'
    amplitude: float = 0.0
    mode: List[PositiveInt] = [ 1 ]
    field: Literal['z', 'v', 'theta', 'p'] = 'z'
    seed: int = 0
    decay: float = Field(default=2.0, ge=0)
    energy: Optional[PositiveFloat] = None
    z: Dict[Union[int, str], float] = {}
    v: Dict[Union[int, str], float] = {}
    theta: Dict[Union[int, str], float] = {}
    p: Dict[Union[int, str], float] = {}
    flux_gradient: float = 0.0

    @field_validator('z', 'v', 'theta', 'p')
    @classmethod
    def mode_keys(cls, value):
        # unquoted YAML keys arrive as ints; stored as "3" or "1,2"
        keys = {}
        for key, c in value.items():
            name = ','.join(str(i) for i in parse_mode_key(key))
            if name in keys:
                raise ValueError('mode {} is listed twice'.format(name))
            keys[name] = c
        return keys


class SimSection(_Section):
    dt: PositiveFloat = 1e-3
    t_end: PositiveFloat = 1.0
    t0: float = 0.0
    scheme: Literal[SCHEMES] = 'picard-midpoint'
    picard_tol: Optional[PositiveFloat] = None
    picard_max_iter: Optional[PositiveInt] = None
    degeneracy_eps: Optional[PositiveFloat] = None
    blowup_threshold: Optional[PositiveFloat] = None


class OutputSection(_Section):
    directory: str = 'out'
    stride: PositiveInt = 1
    precision: Optional[int] = Field(default=None, ge=1, le=17)


class SpectrumSection(_Section):
    k_max: PositiveInt = 8


class SweepSection(_Section):
    gammas: List[float] = [ 0.0, 1.0 ]
    taus: List[float] = [ 0.0, 1.0 ]
    k_max: int = Field(default=512, ge=32)
    length: PositiveFloat = 1.0
    drift_ratio: Optional[float] = Field(default=None, gt=0, le=1)

    @field_validator('gammas', 'taus')
    @classmethod
    def nonnegative(cls, value):
        if not value or any(v < 0 for v in value):
            raise ValueError('needs a nonempty list of nonnegative values')
        return value



class RunConfig(_Section):
    '''A validated run configuration file'''
    basis: BasisSection = BasisSection()
    params: Optional[ParamsSection] = None
    physical: Optional[PhysicalSection] = None
    nonlinearity: NonlinearitySection = NonlinearitySection()
    initial: InitialSection = InitialSection()
    sim: SimSection = SimSection()
    output: OutputSection = OutputSection()
    spectrum: SpectrumSection = SpectrumSection()
    sweep: SweepSection = SweepSection()

    @model_validator(mode='after')
    def one_parameter_block(self):
        if (self.params is None) == (self.physical is None):
            raise ValueError('exactly one of the params and physical sections is required')
        return self

    def canonical(self):
        '''Sorted-key JSON of the validated configuration; loading it back gives the same text'''
        return canonical_json(self.model_dump(mode='json'))

    ###   builders

    def build_basis(self):
        b = self.basis
        return make_basis(b.dim, b.lengths, b.modes, b.padding)

    def build_params(self):
        '''(ModelParams, NormalizationReport or None)'''
        if self.params is not None:
            return ModelParams(**self.params.model_dump()), None
        report = normalize_physical(PhysicalParams(**self.physical.model_dump()))
        return report.params, report

    def build_nonlinearity(self, params):
        n = self.nonlinearity
        nl = preset(n.preset, kappa0=params.kappa0, coefficient=n.coefficient, cubic=n.cubic)
        if n.require_assumptions:
            report = check_assumptions(nl, n.rho)
            if not report.passed:
                raise ConfigError('nonlinearity {} fails {} on |z| <= {}'.format(nl.name, ', '.join(report.failed()), n.rho))
        return nl

    def build_sim_options(self):
        s = self.sim
        return SimOptions(
            dt=s.dt, t_end=s.t_end, t0=s.t0, scheme=s.scheme,
            picard_tol=s.picard_tol, picard_max_iter=s.picard_max_iter,
            degeneracy_eps=s.degeneracy_eps, blowup_threshold=s.blowup_threshold,
            record_stride=self.output.stride,
        )

    def build_initial(self, basis, params):
        '''
        InitialData(state, q0, p_complement).  Listed mode coefficients are added to the
        preset; flux_gradient c adds the flux q0_i = c x_i, whose divergence c * dim does
        not vanish on the boundary and is projected onto the sine span.
        '''
        ini = self.initial
        coeffs = { name: np.zeros(basis.shape) for name in ( 'z', 'v', 'theta', 'p' ) }
        if ini.preset == 'single-mode':
            k = _mode_index(ini.mode, basis)
            # amplitude is the nodal peak of the mode
            coeffs[ini.field][k] = ini.amplitude * math.prod(math.sqrt(L / 2.0) for L in basis.lengths)
        elif ini.preset == 'random':
            rng = np.random.default_rng(ini.seed)
            weights = (basis.eigenvalues / basis.eigenvalues.flat[0]) ** (-0.5 * ini.decay)
            for name in ( 'z', 'v', 'theta', 'p' ):
                coeffs[name] = ini.amplitude * weights * rng.standard_normal(basis.shape)
        for name in ( 'z', 'v', 'theta', 'p' ):
            for key, value in getattr(ini, name).items():
                coeffs[name][_mode_index(parse_mode_key(key), basis)] += value
        fields = { name: SpectralField(basis, c) for name, c in coeffs.items() }
        q0 = gradient_flux(fields['p'])
        complement = 0.0
        if ini.flux_gradient:
            grid = basis.mesh()
            linear = tuple(NodalField(basis, ini.flux_gradient * x) for x in grid)
            projected, complement = project_to_sine(NodalField(basis, np.full(basis.grid_shape, ini.flux_gradient * basis.dim)))
            fields['p'] = fields['p'] + projected
            q0 = tuple(a + b for a, b in zip(q0, linear))
            log.info('initial p0 projected onto the sine span; discarded complement has norm %.6g', complement)
        state = PlateState(self.sim.t0, fields['z'], fields['v'], fields['theta'], fields['p'])
        if ini.energy is not None:
            state = scale_to_energy(state, params, ini.energy)
            if ini.flux_gradient:
                log.info('initial data rescaled to E1 = %s; q0 was not rescaled', ini.energy)
        return InitialData(state, q0, complement)



def parse_mode_key(key):
    '''"3" -> (3,), "1,2" -> (1, 2)'''
    try:
        k = tuple(int(part) for part in str(key).split(','))
    except ValueError:
        raise ValueError('mode keys are 1-based integers like "3" or "1,2" (got {!r})'.format(key))
    if any(i < 1 for i in k):
        raise ValueError('mode keys are 1-based (got {!r})'.format(key))
    return k


def _mode_index(k, basis):
    k = tuple(k)
    if len(k) != basis.dim or any(i > n for i, n in zip(k, basis.modes)):
        raise ConfigError('mode {} is outside the basis modes {}'.format(k, basis.modes))
    return tuple(i - 1 for i in k)



#########################################################
###   Loading


def parse_config(data, source='<config>'):
    '''Validates a dict (the parsed YAML) into a RunConfig'''
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError('{}: the configuration must be a mapping of sections'.format(source))
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError('{}: invalid configuration\n{}'.format(source, e))


def load_config(path):
    '''Reads and validates a YAML run configuration'''
    try:
        with open(path, encoding='utf-8') as fin:
            data = yaml.safe_load(fin)
    except OSError as e:
        raise ConfigError('cannot read configuration {}: {}'.format(path, e))
    except yaml.YAMLError as e:
        raise ConfigError('{} is not valid YAML: {}'.format(path, e))
    return parse_config(data, path)


def build_run(cfg):
    '''
    Everything a simulation needs from a configuration:
    (basis, params, normalization report, nonlinearity, InitialData, SimOptions).
    Model errors surface as ConfigError.
    '''
    try:
        basis = cfg.build_basis()
        params, report = cfg.build_params()
        nl = cfg.build_nonlinearity(params)
        initial = cfg.build_initial(basis, params)
        opts = cfg.build_sim_options()
    except ConfigError:
        raise
    except PlateError as e:
        raise ConfigError(str(e))
    return basis, params, report, nl, initial, opts


def csv_precision(cfg):
    return cfg.output.precision or get_option('CSV_PRECISION')
