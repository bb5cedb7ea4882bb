from django.test import SimpleTestCase

from thermoplate.exceptions import BasisMismatch, NonFiniteError
from thermoplate.model import preset, polynomial_nonlinearity, apply_AF, apply_AG, apply_AH, apply_AF_direct
from thermoplate.spectral import make_basis, SpectralField, to_nodal

import math
import numpy as np
import numpy.testing as npt


def random_field(basis, seed, amplitude, decay=2.0):
    '''A smooth field with nodal peak of about `amplitude`'''
    rng = np.random.default_rng(seed)
    weights = (basis.eigenvalues / basis.eigenvalues.flat[0]) ** (-0.5 * decay)
    u = SpectralField(basis, weights * rng.standard_normal(basis.shape))
    return u * (amplitude / to_nodal(u).max_abs())


def relative(a, b):
    return (a - b).norm() / b.norm()


class Tester(SimpleTestCase):

    def test_AF_of_sine(self):
        # F(z) = -z^3 for z = sin(pi x): A F = 3 pi^2 (2 sin cos^2 - sin^3)
        basis = make_basis(1, 1.0, 8)
        z = SpectralField.from_modes(basis, { 1: 1.0 / math.sqrt(2) })
        x = basis.axes[0]
        s, c = np.sin(math.pi * x), np.cos(math.pi * x)
        AF = apply_AF(z, preset('cubic-stiffening'))
        npt.assert_allclose(to_nodal(AF).values, 3 * math.pi ** 2 * (2 * s * c ** 2 - s ** 3), atol=1e-11)
        self.assertAlmostEqual(AF.coeffs[0], -3 * math.pi ** 2 / (4 * math.sqrt(2)), places=11)
        self.assertAlmostEqual(AF.coeffs[2], 9 * math.pi ** 2 / (4 * math.sqrt(2)), places=11)

    def test_zero_and_linear(self):
        basis = make_basis(2, 1.0, 6)
        self.assertEqual(apply_AF(SpectralField.zeros(basis), preset('cubic-softening')).norm(), 0.0)
        z = random_field(basis, 1, 0.3)
        linear = preset('linear')
        self.assertEqual(apply_AF(z, linear).norm(), 0.0)
        self.assertEqual(apply_AG(z, z, linear).norm(), 0.0)
        self.assertEqual(apply_AH(z, z, z, linear).norm(), 0.0)

    def test_two_routes(self):
        nl = preset('cubic-stiffening')
        basis = make_basis(1, 1.0, 128)
        z = random_field(basis, 4, 0.5)
        self.assertLessEqual(relative(apply_AF(z, nl), apply_AF_direct(z, nl)), 1e-9)
        basis = make_basis(2, ( 1.0, 1.3 ), ( 16, 12 ))
        z = random_field(basis, 5, 0.5)
        self.assertLessEqual(relative(apply_AF(z, nl), apply_AF_direct(z, nl)), 1e-9)

    def test_two_routes_under_refinement(self):
        # z on modes 1..8 and a degree 9 response: F(z) reaches mode 72, which folds
        # into the kept modes only on the N = 16 grid
        nl = polynomial_nonlinearity([ 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0 ], frame='N', name='degree 9')
        errors = []
        for n in ( 16, 32, 64, 128 ):
            z = SpectralField.from_modes(make_basis(1, 1.0, n), { k: 0.1 for k in range(1, 9) })
            errors.append(relative(apply_AF(z, nl), apply_AF_direct(z, nl)))
        for coarse, fine in zip(errors[:-1], errors[1:]):
            self.assertLessEqual(fine, max(coarse, 1e-10), errors)
        self.assertLessEqual(errors[-1], 1e-10, errors)

    def test_AG_is_time_derivative(self):
        # z(t) = z0 + t z1, so d/dt A F(z(t)) at 0 is A G(z0, z1)
        nl = preset('cubic-softening', coefficient=0.5)
        basis = make_basis(1, 1.0, 16)
        z0, z1 = random_field(basis, 6, 0.3), random_field(basis, 7, 0.2)
        h = 1e-4
        fd = (apply_AF(z0 + z1 * h, nl) - apply_AF(z0 - z1 * h, nl)) / (2 * h)
        self.assertLessEqual(relative(fd, apply_AG(z0, z1, nl)), 1e-6)

    def test_AH_is_time_derivative(self):
        # z(t) = z0 + t z1 + t^2/2 z2, so d/dt A G(z(t), z_t(t)) at 0 is A H(z0, z1, z2)
        nl = polynomial_nonlinearity([ 0.0, 1.0, 0.0, 0.4, 0.0, 0.1 ], frame='N', name='quintic')
        basis = make_basis(2, 1.0, 8)
        z0, z1, z2 = random_field(basis, 8, 0.3), random_field(basis, 9, 0.2), random_field(basis, 10, 0.2)
        h = 1e-4
        ahead = apply_AG(z0 + z1 * h + z2 * (0.5 * h * h), z1 + z2 * h, nl)
        behind = apply_AG(z0 - z1 * h + z2 * (0.5 * h * h), z1 - z2 * h, nl)
        self.assertLessEqual(relative((ahead - behind) / (2 * h), apply_AH(z0, z1, z2, nl)), 1e-6)

    def test_mixed_bases(self):
        nl = preset('cubic-stiffening')
        with self.assertRaises(BasisMismatch):
            apply_AG(SpectralField.zeros(make_basis(1, 1.0, 4)), SpectralField.zeros(make_basis(1, 1.0, 5)), nl)

    def test_overflow(self):
        nl = polynomial_nonlinearity([ 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0 ], frame='N', name='degree 9')
        basis = make_basis(1, 1.0, 4)
        z = SpectralField.from_modes(basis, { 1: 1e40 })
        with self.assertRaises(NonFiniteError):
            apply_AF(z, nl)
