from django.test import SimpleTestCase

from thermoplate.diagnostics import (
    energy_levels, level1_energy, scale_to_energy, energy_balance_per_step,
    dissipation_residual, decay_fit, barrier_report, E1_TERMS,
)
from thermoplate.dynamics import PlateState, SimOptions, HaltReason, runtime_jet, step_linear_midpoint, simulate
from thermoplate.exceptions import DiagnosticsError
from thermoplate.model import ModelParams, preset
from thermoplate.oracle import mode_matrix, spectral_abscissa
from thermoplate.spectral import make_basis, SpectralField

from collections import namedtuple
import math
import numpy as np


Sample = namedtuple('Sample', ( 't', 'X', 'E1' ))


def random_state(basis, seed, amplitude=1.0, decay=3.0, fields=( 'z', 'v', 'theta', 'p' )):
    rng = np.random.default_rng(seed)
    weights = (basis.eigenvalues / basis.eigenvalues.flat[0]) ** (-0.5 * decay)
    values = {}
    for name in ( 'z', 'v', 'theta', 'p' ):
        coeffs = amplitude * weights * rng.standard_normal(basis.shape)
        values[name] = SpectralField(basis, coeffs if name in fields else np.zeros(basis.shape))
    return PlateState(0.0, **values)


class Tester(SimpleTestCase):

    def test_zero_energies(self):
        jet = runtime_jet(PlateState.zeros(make_basis(1, 1.0, 4)), ModelParams(), preset('linear'))
        report = energy_levels(jet, ModelParams())
        self.assertEqual(( report.E1, report.E2, report.E3, report.X, report.Y ), ( 0.0, 0.0, 0.0, 0.0, 0.0 ))
        self.assertEqual(set(report.E1_terms), set(E1_TERMS))

    def test_unit_modes(self):
        basis = make_basis(1, 1.0, 4)
        zero = SpectralField.zeros(basis)
        phi = SpectralField.from_modes(basis, { 1: 1.0 })
        params = ModelParams()
        self.assertAlmostEqual(level1_energy(PlateState(0.0, phi, zero, zero, zero), params), math.pi ** 2 / 2, places=13)
        self.assertAlmostEqual(level1_energy(PlateState(0.0, zero, zero, zero, phi), params), 0.5, places=15)
        self.assertAlmostEqual(level1_energy(PlateState(0.0, phi, zero, zero, zero), params.with_values(kappa0=3.0)), 1.5 * math.pi ** 2, places=12)

    def test_ordering(self):
        params = ModelParams(sigma=0.1)
        for seed in range(5):
            state = random_state(make_basis(2, 1.0, 5), seed, 0.05)
            report = energy_levels(runtime_jet(state, params, preset('cubic-stiffening')), params)
            self.assertGreaterEqual(report.Y, 0.0)
            self.assertGreaterEqual(report.X, report.E)
            self.assertAlmostEqual(report.E, report.E1 + report.E2 + report.E3, places=12)
            self.assertGreater(report.topological, 0.0)
            self.assertEqual(len(report.as_row()), 8)

    def test_incomplete_jet(self):
        with self.assertRaises(DiagnosticsError):
            energy_levels(PlateState.zeros(make_basis(1, 1.0, 2)), ModelParams())

    def test_scale_to_energy(self):
        params = ModelParams()
        state = scale_to_energy(random_state(make_basis(1, 1.0, 8), 1), params, 1e-4)
        self.assertAlmostEqual(level1_energy(state, params) / 1e-4, 1.0, places=13)
        with self.assertRaises(DiagnosticsError):
            scale_to_energy(PlateState.zeros(make_basis(1, 1.0, 8)), params, 1.0)

    def test_linear_dissipation_identity(self):
        params = ModelParams()
        nl = preset('linear')
        state = random_state(make_basis(1, 1.0, 64), 2, 0.1, decay=2.0)
        series = [ ( state.t, state ) ]
        for n in range(10000):
            state = step_linear_midpoint(state, 1e-3, params)
            series.append(( state.t, state ))
        self.assertLessEqual(dissipation_residual(series, params, nl), 1e-10)

    def test_single_step_balance(self):
        params = ModelParams()
        before = random_state(make_basis(1, 1.0, 16), 3, 0.1)
        after = step_linear_midpoint(before, 1e-2, params)
        step = energy_balance_per_step(before, after, params, preset('linear'))
        self.assertLess(step.dE1, 0.0)
        self.assertLessEqual(abs(step.residual), 1e-13 * level1_energy(before, params))

    def test_nonlinear_dissipation_identity(self):
        params = ModelParams()
        nl = preset('cubic-stiffening')
        initial = scale_to_energy(random_state(make_basis(1, 1.0, 16), 4), params, 1e-2)
        result = simulate(initial, params, nl, SimOptions(dt=1e-3, t_end=0.5))
        self.assertEqual(result.halt, HaltReason.Completed)
        self.assertLessEqual(dissipation_residual([ ( r.t, r.state ) for r in result.records ], params, nl), 1e-8)

    def test_sigma_energy_decreases(self):
        params = ModelParams(sigma=0.5)
        state = random_state(make_basis(1, 1.0, 16), 5, 0.1)
        energies = [ level1_energy(state, params) ]
        for n in range(200):
            state = step_linear_midpoint(state, 1e-2, params)
            energies.append(level1_energy(state, params))
        self.assertTrue(all(b <= a * (1 + 1e-14) for a, b in zip(energies, energies[1:])))
        with self.assertRaises(DiagnosticsError):
            dissipation_residual([ ( 0.0, state ), ( 0.01, state ) ], params, preset('linear'))

    def test_uneven_series(self):
        state = PlateState.zeros(make_basis(1, 1.0, 2))
        with self.assertRaises(DiagnosticsError):
            dissipation_residual([ ( 0.0, state ), ( 0.1, state ), ( 0.3, state ) ], ModelParams(), preset('linear'))
        with self.assertRaises(DiagnosticsError):
            dissipation_residual([ ( 0.0, state ) ], ModelParams(), preset('linear'))

    def test_decay_fit_exact_exponential(self):
        t = np.linspace(0.0, 10.0, 101)
        fit = decay_fit(zip(t, 3.0 * np.exp(-0.7 * t)), window=( 0.0, 10.0 ))
        self.assertAlmostEqual(fit.kappa_hat, 0.7, places=12)
        self.assertAlmostEqual(fit.C_hat, 3.0, places=11)
        self.assertAlmostEqual(fit.r_squared, 1.0, places=12)
        self.assertEqual(fit.samples, 101)
        # scaling X leaves the rate alone
        scaled = decay_fit(zip(t, 42.0 * np.exp(-0.7 * t)), window=( 0.0, 10.0 ))
        self.assertAlmostEqual(scaled.kappa_hat, fit.kappa_hat, places=12)

    def test_decay_fit_edges(self):
        t = np.linspace(0.0, 10.0, 101)
        flat = decay_fit(zip(t, np.full(t.shape, 2.0)))
        self.assertAlmostEqual(flat.kappa_hat, 0.0, places=14)
        self.assertEqual(flat.window, ( 5.0, 10.0 ))
        with self.assertRaises(DiagnosticsError):
            decay_fit(zip(t, np.where(t > 8.0, 0.0, 1.0)))
        with self.assertRaises(DiagnosticsError):
            decay_fit(zip(t[:5], np.ones(5)))
        with self.assertRaises(DiagnosticsError):
            decay_fit(zip(t, np.ones(t.shape)), window=( 3.0, 3.0 ))

    def test_linear_decay_rate(self):
        # the rate of X is twice the spectral gap of the slowest excited mode
        params = ModelParams()
        basis = make_basis(1, 1.0, 3)
        initial = scale_to_energy(random_state(basis, 6, decay=2.0), params, 1e-2)
        opts = SimOptions(dt=1e-2, t_end=40.0, scheme='linear-midpoint', record_stride=10)
        records = simulate(initial, params, preset('linear'), opts).records
        expected = -2.0 * max(spectral_abscissa(mode_matrix(lam, params)).abscissa for lam in basis.eigenvalues)
        fit = decay_fit([ ( r.t, r.energy.X ) for r in records ])
        self.assertLessEqual(abs(fit.kappa_hat - expected), 0.05 * expected)
        # the level-1 energy carries almost no oscillation, so its fit is nearly exact
        fit = decay_fit([ ( r.t, r.energy.E1 ) for r in records ])
        self.assertGreaterEqual(fit.r_squared, 0.99)

    def test_nonlinear_small_data_decays(self):
        params = ModelParams()
        basis = make_basis(1, 1.0, 32)
        zero = SpectralField.zeros(basis)
        z = SpectralField.from_modes(basis, { 1: 1.0, 3: 0.05 })
        initial = scale_to_energy(PlateState(0.0, z, zero, zero, zero), params, 1e-4)
        opts = SimOptions(dt=1e-3, t_end=40.0, record_stride=100)
        result = simulate(initial, params, preset('cubic-stiffening'), opts)
        self.assertEqual(result.halt, HaltReason.Completed)
        records = result.records
        self.assertLessEqual(records[0].energy.X, 1.0)
        self.assertLessEqual(records[-1].energy.X, 0.01 * records[0].energy.X)
        self.assertGreater(decay_fit([ ( r.t, r.energy.X ) for r in records ]).kappa_hat, 0.0)
        self.assertGreaterEqual(min(r.ellipticity_min for r in records), 0.99)

    def test_barrier_report(self):
        t = np.linspace(0.0, 10.0, 101)
        series = [ Sample(ti, (1.0 + ti) * math.exp(-ti), math.exp(-ti)) for ti in t ]
        report = barrier_report(series)
        self.assertAlmostEqual(report.sup_X_ratio, 1.0, places=15)
        self.assertEqual(report.sup_E1_ratio, 1.0)
        self.assertTrue(report.eventually_monotone)
        rising = barrier_report([ Sample(ti, 1.0 + ti, 1.0) for ti in t ])
        self.assertEqual(rising.sup_X_ratio, 11.0)
        self.assertFalse(rising.eventually_monotone)
        with self.assertRaises(DiagnosticsError):
            barrier_report([])
