'''
The invariant suite run by `thermoplate check`.  Each invariant is a function
registered with @invariant(name, level) that raises AssertionError (or any
exception) when it does not hold.  Level `quick` runs the quick invariants;
`full` adds the convergence studies.
'''
from .diagnostics import dissipation_residual, decay_fit
from .dynamics import PlateState, SimOptions, simulate, runtime_jet, reconstruct_w_q, step_linear_midpoint
from .model import calculus, preset, check_assumptions, growth_bounds, ModelParams
from .oracle import mode_matrix, spectral_abscissa, propagate_exact, stability_sweep, UNIFORMLY_DAMPED, DAMPING_VANISHES
from .spectral import make_basis, SpectralField, to_modal, to_nodal, apply_A_power, b_multiplier, gradient, divergence
from .util import log

from collections import namedtuple
import math
import time
import numpy as np
from mako.template import Template as MakoTemplate


LEVELS = ( 'quick', 'full' )
CheckResult = namedtuple('CheckResult', ( 'name', 'level', 'passed', 'detail', 'seconds' ))

# the registry of invariants (populated by the @invariant decorator)
INVARIANTS = []


def invariant(name, level='quick'):
    '''Registers a check function under a display name'''
    if level not in LEVELS:
        raise ValueError('invariant level must be one of {} (got {})'.format(LEVELS, level))
    def decorator(func):
        INVARIANTS.append(( name, level, func ))
        return func
    return decorator


def run_checks(level='quick'):
    '''Runs the invariants of the level (full includes quick), in registration order'''
    if level not in LEVELS:
        raise ValueError('check level must be one of {} (got {})'.format(LEVELS, level))
    wanted = LEVELS[:LEVELS.index(level) + 1]
    results = []
    for name, inv_level, func in INVARIANTS:
        if inv_level not in wanted:
            continue
        start = time.perf_counter()
        try:
            detail = func() or ''
            passed = True
        except Exception as e:
            detail = '{}: {}'.format(type(e).__name__, e)
            passed = False
            log.info('invariant failed: %s (%s)', name, detail)
        results.append(CheckResult(name, inv_level, passed, detail, time.perf_counter() - start))
    return results


REPORT_TEMPLATE = MakoTemplate('''
${ 'invariant'.ljust(width) }  level  result  seconds  detail
${ '-' * (width + 40) }
%for r in results:
${ r.name.ljust(width) }  ${ r.level.ljust(5) }  ${ ('pass' if r.passed else 'FAIL').ljust(6) }  ${ '{:7.2f}'.format(r.seconds) }  ${ r.detail }
%endfor
${ '-' * (width + 40) }
${ passed } of ${ len(results) } invariants hold
''')


def render_report(results):
    '''The results as a plain text table'''
    width = max([ len(r.name) for r in results ] + [ len('invariant') ])
    return REPORT_TEMPLATE.render(
        results=results,
        width=width,
        passed=sum(1 for r in results if r.passed),
    ).strip() + '\n'



#########################################################
###   Quick invariants


def _random_field(basis, seed, decay=2.0):
    rng = np.random.default_rng(seed)
    return SpectralField(basis, rng.standard_normal(basis.shape) * (basis.eigenvalues / basis.eigenvalues.flat[0]) ** (-0.5 * decay))


def _relative(a, b):
    scale = max(np.max(np.abs(b)), 1e-300)
    return float(np.max(np.abs(a - b)) / scale)


@invariant('transform round trip')
def check_round_trip():
    for basis in ( make_basis(1, 1.0, 64), make_basis(2, ( 1.0, 2.0 ), ( 16, 12 )) ):
        u = _random_field(basis, 1, 0.0)
        err = _relative(to_modal(to_nodal(u)).coeffs, u.coeffs)
        assert err <= 1e-12, 'round trip error {:.3g} on {}'.format(err, basis)
    return 'max error within 1e-12'


@invariant('A power semigroup')
def check_semigroup():
    u = _random_field(make_basis(1, 1.0, 32), 2)
    err = _relative(apply_A_power(apply_A_power(u, 0.5), 0.5).coeffs, apply_A_power(u, 1).coeffs)
    assert err <= 1e-13, 'A^{1/2} A^{1/2} differs from A by {:.3g}'.format(err)


@invariant('B boundedness')
def check_b_bounds():
    basis = make_basis(1, 1.0, 256)
    for alpha, gamma in ( ( 1.0, 1.0 ), ( 0.3, 2.0 ), ( 2.0, 0.1 ) ):
        m = b_multiplier(basis, alpha, gamma)
        assert np.all(m > 0) and np.all(m <= alpha / gamma ** 2 * (1 + 1e-14)), 'B multiplier out of (0, alpha/gamma^2]'


@invariant('divergence of gradient')
def check_div_grad():
    basis = make_basis(2, ( 1.0, 1.5 ), ( 12, 10 ))
    u = _random_field(basis, 3)
    err = _relative(divergence(gradient(u)).coeffs, -apply_A_power(u, 1).coeffs)
    assert err <= 1e-10, 'div grad u differs from -A u by {:.3g}'.format(err)


@invariant('two-route AF')
def check_two_route_af():
    basis = make_basis(1, 1.0, 128)
    nl = preset('cubic-stiffening')
    z = _random_field(basis, 4) * 0.5
    chain = calculus.apply_AF(z, nl)
    direct = calculus.apply_AF_direct(z, nl)
    err = (chain - direct).norm() / chain.norm()
    assert err <= 1e-9, 'chain-rule and projected A F(z) differ by {:.3g}'.format(err)
    return 'relative difference {:.2e}'.format(err)


@invariant('assumption report')
def check_assumption_report():
    assert check_assumptions(preset('cubic-stiffening'), 10.0).passed, 'z + z^3 should satisfy every assumption'
    report = check_assumptions(preset('quadratic'), 1.0)
    assert 'inflection' in report.failed(), 'the quadratic response should fail N\'\'(0) = 0'


@invariant('growth bounds')
def check_growth_bounds():
    # a cubic remainder F = -c z^3 has c1 = 3c, c2 = c3 = 6c and no fourth derivative
    for name in ( 'cubic-stiffening', 'cubic-softening' ):
        bounds = growth_bounds(preset(name, coefficient=0.5), 2.0)
        assert abs(bounds.c1 - 1.5) <= 1e-9 and abs(bounds.c3 - 3.0) <= 1e-9, '{}: {}'.format(name, bounds)
        assert bounds.c4 <= 1e-9, '{}: fourth derivative {}'.format(name, bounds.c4)


@invariant('mode trace')
def check_trace():
    for sigma in ( 0.0, 0.4 ):
        params = ModelParams(sigma=sigma, beta=2.0, tau=0.5)
        for lam in ( math.pi ** 2, 100.0, 1e4 ):
            spectrum = spectral_abscissa(mode_matrix(lam, params))
            expected = -sigma / params.beta - 1.0 / params.tau
            assert abs(np.sum(spectrum.eigenvalues).real - expected) <= 1e-12 * max(1.0, abs(expected)) * lam, 'trace mismatch at lambda={}'.format(lam)


@invariant('dissipativity')
def check_dissipativity():
    for alpha in ( 0.5, 1.0, 3.0 ):
        for gamma in ( 0.01, 1.0 ):
            for tau in ( 0.1, 1.0 ):
                params = ModelParams(alpha=alpha, gamma=gamma, tau=tau, sigma=0.2)
                for lam in np.geomspace(1.0, 1e6, 13):
                    a = spectral_abscissa(mode_matrix(lam, params)).abscissa
                    assert a < 0, 'abscissa {} >= 0 at lambda={} with {}'.format(a, lam, params)


@invariant('midpoint dissipation identity')
def check_dissipation_identity():
    basis = make_basis(1, 1.0, 16)
    params = ModelParams()
    nl = preset('linear')
    state = PlateState(0.0, *[ _random_field(basis, seed) for seed in range(4) ])
    series = [ ( 0.0, state ) ]
    for n in range(1, 201):
        state = step_linear_midpoint(state, 1e-3, params)
        series.append(( state.t, state ))
    residual = dissipation_residual(series, params, nl)
    assert residual <= 1e-10, 'residual {:.3g}'.format(residual)
    return 'residual {:.2e}'.format(residual)


@invariant('jet wiring')
def check_jet_wiring():
    basis = make_basis(1, 1.0, 16)
    params = ModelParams(sigma=0.3)
    nl = preset('cubic-stiffening')
    state = PlateState(0.0, *[ _random_field(basis, seed) * 0.05 for seed in range(4) ])
    jet = runtime_jet(state, params, nl)
    lam = basis.eigenvalues
    lhs = (1.0 / lam + params.gamma) * jet.z_tt.coeffs + params.kappa0 * lam * jet.z.coeffs - params.alpha * lam * jet.theta.coeffs
    assert _relative(lhs, calculus.apply_AF(jet.z, nl).coeffs) <= 1e-10
    heat = params.beta * jet.theta_t.coeffs + jet.p.coeffs + params.sigma * jet.theta.coeffs + params.alpha * jet.z_t.coeffs
    assert np.max(np.abs(heat)) <= 1e-12 * max(1.0, np.max(np.abs(jet.p.coeffs)))
    flux = params.tau * jet.p_t.coeffs + jet.p.coeffs - params.eta * lam * jet.theta.coeffs
    assert np.max(np.abs(flux)) <= 1e-10 * max(1.0, np.max(np.abs(lam * jet.theta.coeffs)))


@invariant('reconstruction div q = p')
def check_reconstruction():
    basis = make_basis(2, 1.0, ( 10, 8 ))
    state = PlateState(0.0, *[ _random_field(basis, seed) for seed in range(4) ])
    w, q = reconstruct_w_q(state)
    err = (divergence(q) - state.p).norm() / state.p.norm()
    assert err <= 1e-12, 'div q - p = {:.3g}'.format(err)
    assert _relative(apply_A_power(w, 1).coeffs, state.z.coeffs) <= 1e-13



#########################################################
###   Full invariants


@invariant('scheme order', level='full')
def check_scheme_order():
    params = ModelParams()
    basis = make_basis(1, 1.0, 1)
    u0 = np.array([ 0.01, 0.0, 0.0, 0.0 ])
    exact = propagate_exact(u0, mode_matrix(basis.eigenvalues.flat[0], params), 1.0)
    errors = []
    for dt in ( 1e-3, 5e-4, 2.5e-4 ):
        state = PlateState.from_stack(basis, 0.0, u0[None, :])
        for n in range(int(round(1.0 / dt))):
            state = step_linear_midpoint(state, dt, params)
        errors.append(np.max(np.abs(state.stack()[0] - exact)))
    ratios = [ a / b for a, b in zip(errors[:-1], errors[1:]) ]
    assert all(3.6 <= r <= 4.4 for r in ratios), 'halving ratios {}'.format(ratios)
    assert errors[-1] <= 1e-7, 'error {:.3g} at dt=2.5e-4'.format(errors[-1])
    return 'ratios {}'.format(', '.join('{:.3f}'.format(r) for r in ratios))


@invariant('stability dichotomy', level='full')
def check_dichotomy():
    cells = { ( c.gamma, c.tau ): c for c in stability_sweep(ModelParams(), [ 0.0, 1.0 ], [ 0.0, 1.0 ], 512) }
    for key in ( ( 1.0, 1.0 ), ( 1.0, 0.0 ), ( 0.0, 0.0 ) ):
        assert cells[key].classification == UNIFORMLY_DAMPED, '{} classified {}'.format(key, cells[key].classification)
    vanishing = cells[( 0.0, 1.0 )]
    assert vanishing.classification == DAMPING_VANISHES, '(0, 1) classified {}'.format(vanishing.classification)
    assert -vanishing.abscissa(512) <= 0.5 * -vanishing.abscissa(32)


@invariant('linear decay rate', level='full')
def check_linear_decay():
    basis = make_basis(1, 1.0, 1)
    params = ModelParams()
    state = PlateState.from_stack(basis, 0.0, np.array([[ 0.1, 0.0, 0.0, 0.0 ]]))
    result = simulate(state, params, preset('linear'), SimOptions(dt=1e-2, t_end=40.0, scheme='linear-midpoint', record_stride=10))
    fit = decay_fit([ ( r.t, r.energy.X ) for r in result.records ])
    expected = -2.0 * spectral_abscissa(mode_matrix(basis.eigenvalues.flat[0], params)).abscissa
    assert abs(fit.kappa_hat - expected) <= 0.05 * expected, 'kappa_hat {:.4g} vs {:.4g}'.format(fit.kappa_hat, expected)
    return 'kappa_hat {:.4g}, expected {:.4g}'.format(fit.kappa_hat, expected)
