from django.test import SimpleTestCase

from thermoplate.diagnostics import level1_energy, energy_terms
from thermoplate.dynamics import (
    PlateState, SimOptions, HaltReason, initial_jet, runtime_jet,
    step_linear_midpoint, step_nonlinear, step_split_explicit, simulate,
)
from thermoplate.exceptions import BlowUpError, DegeneracyError, NonFiniteError, PicardDivergence, PlateError, ModelError
from thermoplate.model import ModelParams, preset
from thermoplate.oracle import mode_matrix, propagate_exact
from thermoplate.signals import plate_signal_record, plate_signal_halt
from thermoplate.spectral import make_basis, SpectralField, sobolev_norm, to_nodal

import math
import numpy as np
import numpy.testing as npt
from unittest import mock


PI2 = math.pi ** 2


def random_state(basis, seed, amplitude, decay=3.0):
    rng = np.random.default_rng(seed)
    weights = (basis.eigenvalues / basis.eigenvalues.flat[0]) ** (-0.5 * decay)
    return PlateState(0.0, *[ SpectralField(basis, amplitude * weights * rng.standard_normal(basis.shape)) for _ in range(4) ])


def single_mode_state(u, t=0.0):
    return PlateState.from_stack(make_basis(1, 1.0, 1), t, np.array([ u ], dtype=float))


def plate_energy(state, params):
    terms = energy_terms(state.z, state.v, state.theta, state.p, params)
    return terms['kinetic'] + terms['rotational'] + terms['strain']


class Tester(SimpleTestCase):

    def test_options(self):
        opts = SimOptions(dt=0.01, t_end=1.0)
        self.assertEqual(opts.steps, 100)
        self.assertAlmostEqual(opts.time(37), 0.37, places=15)
        self.assertEqual(opts.picard_tol, 1e-12)
        with self.assertRaises(PlateError):
            SimOptions(dt=0.03, t_end=1.0)
        with self.assertRaises(PlateError):
            SimOptions(dt=0.01, t_end=1.0, scheme='euler')
        with self.assertRaises(PlateError):
            SimOptions(dt=-0.01, t_end=1.0)

    def test_state_stack(self):
        basis = make_basis(2, 1.0, ( 3, 2 ))
        state = random_state(basis, 1, 1.0)
        self.assertEqual(state.stack().shape, ( 6, 4 ))
        again = PlateState.from_stack(basis, 0.0, state.stack())
        npt.assert_array_equal(again.theta.coeffs, state.theta.coeffs)
        with self.assertRaises(PlateError):
            PlateState(0.0, state.z, state.v, state.theta, None)

    def test_initial_jet_single_mode(self):
        basis = make_basis(1, 1.0, 4)
        zero = SpectralField.zeros(basis)
        z0 = SpectralField.from_modes(basis, { 1: 0.3 })
        jet = initial_jet(z0, zero, zero, zero, ModelParams(), preset('linear'))
        self.assertAlmostEqual(jet.z_tt.coeffs[0], -PI2 ** 2 * 0.3 / (1 + PI2), places=12)
        self.assertEqual(jet.z_ttt.norm(), 0.0)
        # theta0 = phi_1 with the rest zero
        theta0 = SpectralField.from_modes(basis, { 1: 1.0 })
        jet = initial_jet(zero, zero, theta0, zero, ModelParams(), preset('linear'))
        self.assertEqual(jet.theta_t.norm(), 0.0)
        self.assertAlmostEqual(jet.p_t.coeffs[0], PI2, places=12)

    def test_zero_jet(self):
        basis = make_basis(2, 1.0, 4)
        zero = SpectralField.zeros(basis)
        jet = initial_jet(zero, zero, zero, zero, ModelParams(), preset('cubic-softening'))
        for name, coeffs in jet.as_dict().items():
            self.assertEqual(np.max(np.abs(coeffs)), 0.0, name)

    def test_jet_matches_mode_matrix(self):
        params = ModelParams(beta=1.5, sigma=0.2, tau=0.7, eta=2.0)
        u = np.array([ 0.3, -0.2, 0.5, 0.1 ])
        M = mode_matrix(PI2, params).matrix
        d1, d2, d3 = M @ u, M @ M @ u, M @ M @ M @ u
        jet = runtime_jet(single_mode_state(u), params, preset('linear'))
        npt.assert_allclose(
            [ jet.z_tt.coeffs[0], jet.z_ttt.coeffs[0], jet.theta_t.coeffs[0], jet.theta_tt.coeffs[0], jet.theta_ttt.coeffs[0], jet.p_t.coeffs[0], jet.p_tt.coeffs[0] ],
            [ d2[0], d3[0], d1[2], d2[2], d3[2], d1[3], d2[3] ],
            rtol=1e-10,
        )

    def test_degenerate_jet(self):
        basis = make_basis(1, 1.0, 8)
        zero = SpectralField.zeros(basis)
        z0 = SpectralField.from_modes(basis, { 1: 0.7 / math.sqrt(2) })
        with self.assertRaises(DegeneracyError):
            initial_jet(z0, zero, zero, zero, ModelParams(), preset('cubic-softening'))
        with self.assertRaises(ModelError):
            initial_jet(zero, zero, zero, zero, ModelParams(gamma=0.0), preset('linear'))

    def test_decoupled_plate_conserves_energy(self):
        params = ModelParams(alpha=0.0)
        state = random_state(make_basis(1, 1.0, 16), 2, 0.1)
        before = plate_energy(state, params)
        for n in range(100):
            state = step_linear_midpoint(state, 0.01, params)
        self.assertAlmostEqual(plate_energy(state, params) / before, 1.0, places=12)

    def test_zero_stays_zero(self):
        basis = make_basis(1, 1.0, 8)
        state = PlateState.zeros(basis)
        self.assertEqual(np.max(np.abs(step_linear_midpoint(state, 0.1, ModelParams()).stack())), 0.0)
        opts = SimOptions(dt=0.1, t_end=1.0)
        result = step_nonlinear(state, 0.1, ModelParams(), preset('cubic-stiffening'), opts)
        self.assertEqual(np.max(np.abs(result.state.stack())), 0.0)

    def test_midpoint_order(self):
        params = ModelParams()
        u0 = np.array([ 0.01, 0.0, 0.0, 0.0 ])
        exact = propagate_exact(u0, mode_matrix(PI2, params), 1.0)
        errors = []
        for dt in ( 1e-3, 5e-4, 2.5e-4 ):
            state = single_mode_state(u0)
            for n in range(int(round(1.0 / dt))):
                state = step_linear_midpoint(state, dt, params)
            errors.append(np.max(np.abs(state.stack()[0] - exact)))
        self.assertLessEqual(errors[0], 1e-6)
        self.assertLessEqual(errors[-1], 1e-7)
        for coarse, fine in zip(errors[:-1], errors[1:]):
            self.assertTrue(3.6 <= coarse / fine <= 4.4, errors)

    def test_picard_with_linear_response(self):
        state = random_state(make_basis(1, 1.0, 16), 3, 0.1)
        opts = SimOptions(dt=0.01, t_end=1.0)
        result = step_nonlinear(state, 0.01, ModelParams(), preset('linear'), opts)
        npt.assert_array_equal(result.state.stack(), step_linear_midpoint(state, 0.01, ModelParams()).stack())
        self.assertEqual(result.iterations, 1)

    def test_picard_small_data(self):
        state = random_state(make_basis(1, 1.0, 32), 4, 1.0)
        state = state.scaled(math.sqrt(1e-4 / level1_energy(state, ModelParams())))
        opts = SimOptions(dt=1e-3, t_end=1.0)
        result = step_nonlinear(state, 1e-3, ModelParams(), preset('cubic-stiffening'), opts)
        self.assertLessEqual(result.iterations, 5)
        self.assertLessEqual(result.distance, opts.picard_tol)

    def test_split_explicit_tracks_midpoint(self):
        params = ModelParams()
        nl = preset('cubic-stiffening')
        basis = make_basis(1, 1.0, 4)
        zero = SpectralField.zeros(basis)
        initial = PlateState(0.0, SpectralField.from_modes(basis, { 1: 0.3 / math.sqrt(2) }), zero, zero, zero)
        final = {}
        for scheme in ( 'picard-midpoint', 'split-explicit', 'linear-midpoint' ):
            opts = SimOptions(dt=1e-3, t_end=0.1, scheme=scheme, record_stride=100)
            final[scheme] = simulate(initial, params, nl, opts).final_state.stack()
        split = np.max(np.abs(final['split-explicit'] - final['picard-midpoint']))
        linear = np.max(np.abs(final['linear-midpoint'] - final['picard-midpoint']))
        self.assertLess(split, 0.05 * linear)
        # one split step is a single evaluation
        result = step_split_explicit(initial, 1e-3, params, nl, SimOptions(dt=1e-3, t_end=1.0))
        self.assertEqual(result.iterations, 1)

    def test_degenerate_step(self):
        basis = make_basis(1, 1.0, 8)
        z = SpectralField.from_modes(basis, { 1: 0.7 / math.sqrt(2) })
        zero = SpectralField.zeros(basis)
        with self.assertRaises(DegeneracyError):
            step_nonlinear(PlateState(0.0, z, zero, zero, zero), 1e-3, ModelParams(), preset('cubic-softening'), SimOptions(dt=1e-3, t_end=1.0))

    def test_simulate_zero(self):
        result = simulate(PlateState.zeros(make_basis(1, 1.0, 8)), ModelParams(), preset('cubic-stiffening'), SimOptions(dt=0.1, t_end=1.0))
        self.assertEqual(result.halt, HaltReason.Completed)
        self.assertEqual(len(result.records), 11)
        self.assertTrue(all(r.energy.X == 0.0 for r in result.records))

    def test_simulate_matches_oracle(self):
        params = ModelParams()
        u0 = np.array([ 0.01, 0.005, -0.002, 0.001 ])
        opts = SimOptions(dt=1e-3, t_end=1.0, scheme='linear-midpoint', record_stride=100)
        result = simulate(single_mode_state(u0), params, preset('linear'), opts)
        self.assertEqual(result.halt, HaltReason.Completed)
        self.assertEqual([ round(r.t, 12) for r in result.records ], [ round(0.1 * n, 12) for n in range(11) ])
        npt.assert_allclose(result.final_state.stack()[0], propagate_exact(u0, mode_matrix(PI2, params), 1.0), atol=1e-6)

    def test_simulate_degenerate_start(self):
        basis = make_basis(1, 1.0, 8)
        z = SpectralField.from_modes(basis, { 1: 0.7 / math.sqrt(2) })
        zero = SpectralField.zeros(basis)
        initial = PlateState(0.0, z, zero, zero, zero)
        result = simulate(initial, ModelParams(), preset('cubic-softening'), SimOptions(dt=1e-3, t_end=0.1))
        self.assertEqual(result.halt, HaltReason.Degeneracy)
        self.assertEqual(result.records, [])
        npt.assert_array_equal(result.final_state.stack(), initial.stack())
        self.assertEqual(result.t, 0.0)

    def test_simulate_reaches_degeneracy(self):
        # pushed past the inflection of N'(z) = 1 - 3 z^2 at |z| = 1/sqrt(3)
        basis = make_basis(1, 1.0, 8)
        zero = SpectralField.zeros(basis)
        z = SpectralField.from_modes(basis, { 1: 0.55 / math.sqrt(2) })
        v = SpectralField.from_modes(basis, { 1: 5.0 / math.sqrt(2) })
        result = simulate(PlateState(0.0, z, v, zero, zero), ModelParams(), preset('cubic-softening'), SimOptions(dt=1e-3, t_end=0.2))
        self.assertEqual(result.halt, HaltReason.Degeneracy)
        self.assertGreater(result.t, 0.0)
        self.assertLess(result.t, 0.05)
        self.assertTrue(result.records)
        self.assertTrue(all(r.ellipticity_min > 0 for r in result.records))
        self.assertTrue(all(np.isfinite(r.energy.X) for r in result.records))
        self.assertEqual(result.final_state.t, result.records[-1].t)

    def test_signals(self):
        records, halts = [], []
        def on_record(sender, record, **kwargs):
            records.append(record.t)
        def on_halt(sender, reason, t, result, **kwargs):
            halts.append(( reason, t ))
        plate_signal_record.connect(on_record)
        plate_signal_halt.connect(on_halt)
        try:
            opts = SimOptions(dt=0.1, t_end=0.5, signals=True)
            simulate(PlateState.zeros(make_basis(1, 1.0, 4)), ModelParams(), preset('linear'), opts)
        finally:
            plate_signal_record.disconnect(on_record)
            plate_signal_halt.disconnect(on_halt)
        self.assertEqual(len(records), 6)
        self.assertEqual(halts, [ ( HaltReason.Completed, 0.5 ) ])

    def test_sinks_and_stride(self):
        seen = []
        opts = SimOptions(dt=0.01, t_end=0.1, record_stride=3)
        result = simulate(random_state(make_basis(1, 1.0, 4), 6, 0.01), ModelParams(), preset('cubic-stiffening'), opts, sinks=[ seen.append ])
        # t = 0, 0.03, 0.06, 0.09 and the final step
        self.assertEqual(len(seen), 5)
        self.assertEqual(seen, result.records)
        self.assertEqual(result.picard_stats()['steps'], 10)

    def test_nodal_peak_helper(self):
        basis = make_basis(1, 1.0, 8)
        z = SpectralField.from_modes(basis, { 1: 0.55 / math.sqrt(2) })
        self.assertAlmostEqual(to_nodal(z).max_abs(), 0.55, places=12)

    def test_jet_matches_trajectory(self):
        # central differences of the simulated fields converge to the jet at order 2
        params = ModelParams()
        nl = preset('cubic-stiffening')
        initial = random_state(make_basis(1, 1.0, 4), 12, 0.05)
        errors = []
        for dt in ( 0.02, 0.01 ):
            records = simulate(initial, params, nl, SimOptions(dt=dt, t_end=0.2 + dt)).records
            before, middle, after = [ r.state for r in records[-3:] ]
            self.assertAlmostEqual(middle.t, 0.2, places=12)
            jet = runtime_jet(middle, params, nl)
            worst = 0.0
            for name, rate in ( ( 'v', 'z_tt' ), ( 'theta', 'theta_t' ), ( 'p', 'p_t' ) ):
                fd = (getattr(after, name) - getattr(before, name)) * (0.5 / dt)
                worst = max(worst, (fd - getattr(jet, rate)).norm() / getattr(jet, rate).norm())
            errors.append(worst)
        self.assertTrue(3.0 <= errors[0] / errors[1] <= 5.0, errors)

    def test_jet_matches_start(self):
        # one-sided differences over t0, t0 + dt, t0 + 2 dt converge to initial_jet at order 2
        params = ModelParams()
        nl = preset('cubic-stiffening')
        basis = make_basis(1, 1.0, 4)
        z = SpectralField.from_modes(basis, { 1: 0.05, 2: -0.02 })
        v = SpectralField.from_modes(basis, { 1: 0.03, 2: 0.04 })
        theta = SpectralField.from_modes(basis, { 1: 0.02, 2: 0.01 })
        p = SpectralField.from_modes(basis, { 1: -0.01, 2: 0.02 })
        jet = initial_jet(z, v, theta, p, params, nl)
        pairs = (
            ( 'v', 'z_tt' ), ( 'z_tt', 'z_ttt' ),
            ( 'theta', 'theta_t' ), ( 'theta_t', 'theta_tt' ),
            ( 'p', 'p_t' ), ( 'p_t', 'p_tt' ),
        )
        errors = {}
        for dt in ( 0.02, 0.01 ):
            records = simulate(PlateState(0.0, z, v, theta, p), params, nl, SimOptions(dt=dt, t_end=2 * dt)).records
            self.assertEqual(len(records), 3)
            jets = [ runtime_jet(r.state, params, nl) for r in records ]
            for name, rate in pairs:
                f0, f1, f2 = [ getattr(j, name) for j in jets ]
                fd = (f1 * 4.0 - f0 * 3.0 - f2) * (0.5 / dt)
                errors.setdefault(rate, []).append((fd - getattr(jet, rate)).norm() / getattr(jet, rate).norm())
        for rate, ( coarse, fine ) in errors.items():
            self.assertLess(fine, 0.05, rate)
            self.assertTrue(3.0 <= coarse / fine <= 5.0, ( rate, coarse, fine ))

    def test_picard_divergence(self):
        basis = make_basis(1, 1.0, 8)
        zero = SpectralField.zeros(basis)
        z = SpectralField.from_modes(basis, { 1: 3.0 / math.sqrt(2), 3: 1.0 })
        state = PlateState(0.0, z, zero, zero, zero)
        nl = preset('cubic-stiffening')
        opts = SimOptions(dt=0.5, t_end=0.5, picard_max_iter=5)
        with self.assertRaises(PicardDivergence) as cm:
            step_nonlinear(state, 0.5, ModelParams(), nl, opts)
        self.assertEqual(cm.exception.t, 0.0)
        result = simulate(state, ModelParams(), nl, opts)
        self.assertEqual(result.halt, HaltReason.PicardDivergence)
        self.assertIsInstance(result.error, PicardDivergence)
        self.assertEqual(result.t, 0.0)
        self.assertEqual(len(result.records), 1)
        npt.assert_array_equal(result.final_state.stack(), state.stack())

    def test_simulate_reaches_blowup(self):
        # z starts at rest and grows, so its H^3 norm increases over the first steps
        basis = make_basis(1, 1.0, 8)
        zero = SpectralField.zeros(basis)
        initial = PlateState(0.0, zero, SpectralField.from_modes(basis, { 1: 1.0 }), zero, zero)
        params, nl = ModelParams(), preset('cubic-stiffening')
        free = simulate(initial, params, nl, SimOptions(dt=1e-3, t_end=0.01))
        norms = [ sobolev_norm(r.state.z, 3) for r in free.records ]
        self.assertTrue(all(a < b for a, b in zip(norms[:6], norms[1:6])), norms)
        threshold = 0.5 * (norms[4] + norms[5])
        result = simulate(initial, params, nl, SimOptions(dt=1e-3, t_end=0.01, blowup_threshold=threshold))
        self.assertEqual(result.halt, HaltReason.BlowUp)
        self.assertIsInstance(result.error, BlowUpError)
        self.assertAlmostEqual(result.t, 0.005, places=12)
        self.assertEqual(len(result.records), 5)
        self.assertAlmostEqual(result.final_state.t, 0.004, places=12)
        for r in result.records:
            self.assertLessEqual(sobolev_norm(r.state.z, 3), threshold)
            self.assertTrue(np.all(np.isfinite(r.state.stack())))
            self.assertTrue(all(np.isfinite(v) for v in r.as_row()))

    def test_split_step_overflow_is_blowup(self):
        basis = make_basis(1, 1.0, 4)
        state = random_state(basis, 7, 0.01)
        nl = preset('cubic-stiffening')
        opts = SimOptions(dt=1e-3, t_end=0.01, scheme='split-explicit')
        with mock.patch('thermoplate.dynamics.stepper.calculus') as stepper_calculus:
            stepper_calculus.apply_AF.side_effect = NonFiniteError('A F(z)')
            with self.assertRaises(BlowUpError):
                step_split_explicit(state, 1e-3, ModelParams(), nl, opts)
            result = simulate(state, ModelParams(), nl, opts)
        self.assertEqual(result.halt, HaltReason.BlowUp)
        self.assertEqual(len(result.records), 1)
