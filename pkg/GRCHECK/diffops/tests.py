import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.exceptions import (
    DegenerateFormError, DegreeError, DimensionError, DomainError, GammaConventionError, NonIdempotentProjection,
    SingularMetricError, StepError,
)
from exterior.models import AlternatingTensor, Chart, MetricSpec
from fields.models import Coord, bump, exp, sin
from fields.sampling import SampleSet
from valued.models import LieStructure, ValuedForm, ValueSpace
from valued.pairings import PAIRINGS, lift_pointwise
from valued.phi import DiracPairing

from . import geometry
from .curvature import MetricField, inverse_metric_field, ricci_field, riemann_field
from .exterior import covariant_D, curvature, exterior_d
from .geodesics import geodesic_integrate, orbital_period, schwarzschild_circular_orbit
from .models import GammaSystem, HamiltonianSpec, LeviCivitaConnection, LieConnection, christoffels_from_metric
from .quantum import SPINOR, dirac_apply, dirac_operator, gamma_form, schrodinger_apply
from .symplectic import PoissonFunction, SymplecticForm, interior_field
from .vectors import lie_bracket, nabla_X, projected_lie

x, y, z, xi = (Coord(i, name) for i, name in enumerate(('x', 'y', 'z', 'xi')))
MINKOWSKI = Chart('flat', ('x', 'y', 'z', 'xi'), MetricSpec.minkowski())
ETA = MINKOWSKI.metric.constant_matrix
SU2 = ValueSpace.numbered('su2', 3, lie=LieStructure.su2())


def sphere():
    theta = Coord(0, 'theta')
    return Chart('sphere', ('theta', 'phi'), MetricSpec.from_rows([[1, 0], [0, sin(theta) ** 2]]))


def schwarzschild(mass=1):
    r, theta = Coord(0, 'r'), Coord(1, 'theta')
    lapse = 1 - 2 * mass / r
    rows = [
        [-1 / lapse, 0, 0, 0],
        [0, -r ** 2, 0, 0],
        [0, 0, -(r ** 2) * sin(theta) ** 2, 0],
        [0, 0, 0, lapse],
    ]
    return Chart('schwarzschild', ('r', 'theta', 'phi', 't'), MetricSpec.from_rows(rows))


SHELL = SampleSet.random([(3, 10), (0.4, 2.7), (-3, 3), (-3, 3)], 100, seed=11)


def one_form(*coefficients):
    return AlternatingTensor.build(4, 1, {(mu,): c for mu, c in enumerate(coefficients)})


def plain(tensor):
    return ValuedForm.from_tensor(tensor)


def max_abs(form, point):
    return max(form.at(point).magnitudes().values())


polynomials = st.tuples(
    st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([x, y, z, xi]), st.sampled_from([x, y, z, xi]),
).map(lambda t: t[0] * t[2] * t[3] + t[1] * t[2])

points = st.lists(st.floats(-1.5, 1.5), min_size=4, max_size=4)


class ExteriorDerivativeTests(SimpleTestCase):

    def test_d_of_x_dy(self):
        result = exterior_d(plain(AlternatingTensor.basis(4, (1,), coefficient=x)))
        self.assertEqual(result.at((0.1, 0.2, 0.3, 0.4)).part('1').components, {(0, 1): 1})

    def test_plane_wave_field_is_closed(self):
        field = exterior_d(plain(one_form(sin(z - xi), 0, 0, 0)))
        self.assertEqual(field.degree, 2)
        for point in SampleSet.random([(-2, 2)] * 4, 50, seed=3).points():
            self.assertLess(max_abs(exterior_d(field), point), 1e-12)

    def test_top_degree(self):
        with self.assertRaises(DegreeError):
            exterior_d(plain(AlternatingTensor.basis(4, (0, 1, 2, 3), coefficient=x)))

    @settings(derandomize=True, max_examples=40, deadline=None)
    @given(st.lists(polynomials, min_size=4, max_size=4), points)
    def test_d_squared_vanishes(self, coefficients, point):
        form = plain(one_form(*(sin(c) for c in coefficients)))
        self.assertLess(max_abs(exterior_d(exterior_d(form)), point), 1e-10)


class CovariantDerivativeTests(SimpleTestCase):
    point = (2.0, -0.5, 0.25, 1.5)

    def test_trivial_connection_is_d(self):
        psi = ValuedForm.build(4, 1, SU2, {'e1': one_form(0, x * z, 0, 0)})
        self.assertEqual(covariant_D(None, psi).at(self.point), exterior_d(psi).at(self.point))

    def test_abelian_bracket_term_vanishes(self):
        abelian = ValueSpace.numbered('u1^2', 2, lie=LieStructure.abelian(2))
        omega = ValuedForm.build(4, 1, abelian, {'e1': one_form(x, 0, 0, y), 'e2': one_form(0, z, 0, 0)})
        psi = ValuedForm.build(4, 1, abelian, {'e2': one_form(0, 0, x * y, 0)})
        result = covariant_D(LieConnection(omega), psi)
        self.assertEqual(result.at(self.point), exterior_d(psi).at(self.point))

    def test_su2_component_placement(self):
        omega = ValuedForm.build(4, 1, SU2, {'e3': one_form(0, 0, 0, x)})
        psi = ValuedForm.build(4, 1, SU2, {'e1': one_form(0, 1, 0, 0)})
        result = covariant_D(LieConnection(omega), psi).at(self.point)
        self.assertEqual(set(result.parts), {'e2'})
        # x dxi ^ dy = -x dy ^ dxi
        self.assertEqual(result.part('e2').components, {(1, 3): -2})

    def test_connection_needs_a_lie_structure(self):
        with self.assertRaises(DimensionError):
            LieConnection(ValuedForm.build(4, 1, ValueSpace.numbered('V', 3), {'e1': one_form(x, 0, 0, 0)}))

    @settings(derandomize=True, max_examples=25, deadline=None)
    @given(st.lists(polynomials, min_size=12, max_size=12), points)
    def test_bianchi_identity(self, coefficients, point):
        parts = {
            label: one_form(*coefficients[4 * k:4 * k + 4]) for k, label in enumerate(SU2.labels)
        }
        connection = LieConnection(ValuedForm.build(4, 1, SU2, parts))
        omega = curvature(connection)
        self.assertLess(max_abs(covariant_D(connection, omega), point), 1e-10)


class LeviCivitaTests(SimpleTestCase):

    def test_constant_metric_has_no_christoffels(self):
        self.assertFalse(geometry.christoffel_at(MINKOWSKI.metric, (1, 2, 3, 4)).any())
        self.assertTrue(LeviCivitaConnection(MINKOWSKI).is_zero)

    def test_sphere_christoffels(self):
        theta = 0.7
        gamma = geometry.christoffel_at(sphere().metric, (theta, 0.3))
        self.assertAlmostEqual(gamma[0, 1, 1], -math.sin(theta) * math.cos(theta), places=12)
        self.assertAlmostEqual(gamma[1, 0, 1], math.cos(theta) / math.sin(theta), places=12)
        self.assertAlmostEqual(gamma[1, 1, 0], gamma[1, 0, 1], places=12)

    def test_connection_from_metric(self):
        connection = christoffels_from_metric(sphere())
        self.assertFalse(connection.is_zero)
        self.assertEqual(connection.space.dim, 2)
        self.assertTrue(np.array_equal(connection.at((0.7, 0.3)), geometry.christoffel_at(sphere().metric, (0.7, 0.3))))

    def test_schwarzschild_metricity_and_symmetry(self):
        metric = schwarzschild().metric
        for point in SHELL.points():
            self.assertLess(np.abs(geometry.metricity_defect(metric, point)).max(), 1e-9)
            gamma = geometry.christoffel_at(metric, point)
            self.assertLess(np.abs(gamma - np.swapaxes(gamma, 1, 2)).max(), 1e-12)

    def test_christoffels_agree_with_finite_differences(self):
        metric = schwarzschild().metric
        point = np.array([4.0, 1.1, 0.3, 0.2])
        h = 1e-4
        for k in range(4):
            step = np.zeros(4)
            step[k] = h
            numeric = (geometry.christoffel_at(metric, point + step) - geometry.christoffel_at(metric, point - step)) / (2 * h)
            exact = geometry.christoffel_derivatives_at(metric, point)[k]
            self.assertLess(np.abs(numeric - exact).max(), 1e-6)

    def test_flat_ricci(self):
        self.assertFalse(geometry.ricci_at(MINKOWSKI.metric, (0, 0, 0, 0)).any())

    def test_unit_sphere_is_einstein(self):
        chart = sphere()
        for theta in (0.3, 1.0, 2.2):
            point = (theta, 0.5)
            ricci = geometry.ricci_at(chart.metric, point)
            self.assertLess(np.abs(ricci - chart.metric.matrix_at(point)).max(), 1e-8)

    def test_schwarzschild_is_ricci_flat(self):
        metric = schwarzschild().metric
        for point in SHELL.points():
            self.assertLess(np.abs(geometry.ricci_at(metric, point)).max(), 1e-8)

    def test_contracted_riemann_field_matches_ricci(self):
        chart = sphere()
        point = (0.9, 0.1)
        inverse = inverse_metric_field(chart).at(point)
        riemann = riemann_field(MetricField(chart)).at(point)
        direct = ricci_field(chart).at(point)
        for s, m in ((0, 0), (0, 1), (1, 1)):
            names = chart.coord_names
            total = sum(
                inverse.scalar(f"g^[{names[a]},{names[b]}]") * riemann.scalar(f"R[{names[a]},{names[s]},{names[b]},{names[m]}]")
                for a in range(2) for b in range(2)
            )
            self.assertAlmostEqual(total, direct.scalar(f"Ric[{names[s]},{names[m]}]") or 0, places=12)


class VectorFieldTests(SimpleTestCase):

    def test_coordinate_fields_commute(self):
        bracket = lie_bracket((1, 0, 0), (0, 1, 0))
        self.assertTrue(all(component.evaluate((1, 2, 3)) == 0 for component in bracket))

    def test_bracket_with_x_dz(self):
        bracket = lie_bracket((1, 0, 0), (0, 0, x))
        self.assertEqual([c.evaluate((0.4, 0.5, 0.6)) for c in bracket], [0, 0, 1])

    def test_jacobi_identity(self):
        a, b, c = (x * y, z, 1), (sin(z), x ** 2, y), (0, exp(x), x * z)

        def br(u, v):
            return lie_bracket(u, v)

        total = [
            p + q + r for p, q, r in zip(br(a, br(b, c)), br(b, br(c, a)), br(c, br(a, b)))
        ]
        for point in SampleSet.random([(-1, 1)] * 3, 100, seed=5).points():
            self.assertLess(max(abs(component.evaluate(point)) for component in total), 1e-10)

    def test_constant_field_is_parallel(self):
        result = nabla_X(None, MINKOWSKI, (1, 2, 0, 1), (1, 2, 0, 1))
        self.assertTrue(result.is_zero())

    def test_soliton_is_autoparallel(self):
        alpha = 2 / math.sqrt(3)
        f = exp(-(x ** 2 + y ** 2)) * bump(alpha * (z - 0.5 * xi))
        u = (0, 0, 0.5 * f, f)
        result = nabla_X(LeviCivitaConnection(MINKOWSKI), MINKOWSKI, u, u)
        for point in SampleSet.random([(-2, 2)] * 4, 200, seed=7).points():
            self.assertLess(max_abs(result, point), 1e-10)

    def test_accelerating_field(self):
        u = (0, 0, z, 0)
        result = nabla_X(None, MINKOWSKI, u, u).at((0, 0, 1.5, 0))
        self.assertEqual(result.magnitudes(), {'x': 0.0, 'y': 0.0, 'z': 1.5, 'xi': 0.0})

    def test_heisenberg_distribution_is_not_integrable(self):
        chart = Chart('R3', ('x', 'y', 'z'), MetricSpec.euclidean(3))
        onto_z = [[0, 0, 0], [0, 0, 0], [0, 0, 1]]
        result = projected_lie(chart, onto_z, (1, 0, 0))((0, 1, x))
        for point in SampleSet.grid([(-1, 1)] * 3, 3).points():
            self.assertEqual(result.at(point).magnitudes()['z'], 1.0)

    def test_coordinate_distribution_is_integrable(self):
        chart = Chart('R3', ('x', 'y', 'z'), MetricSpec.euclidean(3))
        onto_z = [[0, 0, 0], [0, 0, 0], [0, 0, 1]]
        result = projected_lie(chart, onto_z, (1, 0, 0))((0, 1, 0))
        self.assertTrue(result.at((0.2, 0.3, 0.4)).is_zero())

    def test_projection_must_be_idempotent(self):
        chart = Chart('R3', ('x', 'y', 'z'), MetricSpec.euclidean(3))
        doubled = [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
        result = projected_lie(chart, doubled, (1, 0, 0))((0, 1, x))
        with self.assertRaises(NonIdempotentProjection):
            result.at((0, 0, 0))


class DiracTests(SimpleTestCase):
    grid = SampleSet.random([(-2, 2)] * 4, 50, seed=1).points()

    def residual(self, gammas, psi):
        return max(
            max(abs(component.evaluate(point)) for component in dirac_apply(gammas, psi)) for point in self.grid
        )

    def test_gamma_identities_hold_exactly(self):
        gammas = GammaSystem(ETA)
        self.assertTrue(np.array_equal(gammas.contraction(), -2 * np.eye(4)))

    def test_broken_matrices_are_rejected(self):
        with self.assertRaises(GammaConventionError):
            GammaSystem(ETA, matrices=tuple(np.eye(4, dtype=complex) for _ in range(4)))
        with self.assertRaises(GammaConventionError):
            GammaSystem(ETA, sign='*')

    def test_rest_frame_spinor(self):
        wave = exp(-1j * xi)
        self.assertLess(self.residual(GammaSystem(ETA, mass=1.0), (wave, 0, 0, 0)), 1e-12)

    def test_wrong_mass(self):
        wave = exp(-1j * xi)
        self.assertAlmostEqual(self.residual(GammaSystem(ETA, mass=2.0), (wave, 0, 0, 0)), 1.0, places=12)

    def test_massless_null_wave(self):
        wave = exp(-1j * (z + xi))
        self.assertLess(self.residual(GammaSystem(ETA), (wave, 0, wave, 0)), 1e-12)

    def test_operator_paired_with_gammas_is_the_reduced_equation(self):
        gammas = GammaSystem(ETA, mass=0.5, charge=0.3, potential=one_form(0, x, 0, 1))
        psi = (exp(-1j * xi), x * y, 0, sin(z))
        form = ValuedForm.from_scalars(4, SPINOR, dict(zip(SPINOR.labels, psi)))
        operator = dirac_operator(gammas, form)
        sigma = gamma_form(gammas)
        direct = dirac_apply(gammas, psi)
        for point in self.grid[:10]:
            paired = lift_pointwise(PAIRINGS['metric_pairing'], DiracPairing(SPINOR), sigma.at(point), operator.at(point), ETA)
            for label, expected in zip(SPINOR.labels, direct):
                self.assertAlmostEqual(paired.scalar(label), expected.evaluate(point), places=12)


class SchrodingerTests(SimpleTestCase):
    t = Coord(1, 't')
    x1 = Coord(0, 'x')
    grid = SampleSet.random([(-2, 2), (-2, 2)], 50, seed=2).points()

    def residual(self, hamiltonian, psi):
        expr = schrodinger_apply(hamiltonian, psi, 2)
        return max(abs(expr.evaluate(point)) for point in self.grid)

    def test_plane_wave(self):
        psi = exp(1j * (2 * self.x1 - 2 * self.t))
        self.assertLess(self.residual(HamiltonianSpec(), psi), 1e-12)

    def test_wrong_dispersion(self):
        psi = exp(1j * (2 * self.x1 - 3 * self.t))
        self.assertAlmostEqual(self.residual(HamiltonianSpec(), psi), 1.0, places=12)

    def test_oscillator_ground_state(self):
        psi = exp(-(self.x1 ** 2) / 2) * exp(-0.5j * self.t)
        hamiltonian = HamiltonianSpec(potential=self.x1 ** 2 / 2)
        self.assertLess(self.residual(hamiltonian, psi), 1e-12)

    def test_parameters_must_be_positive(self):
        with self.assertRaises(DomainError):
            HamiltonianSpec(hbar=0)


class GeodesicTests(SimpleTestCase):

    def test_straight_lines_in_flat_space(self):
        trajectory = geodesic_integrate(LeviCivitaConnection(MINKOWSKI), (0, 1, 2, 3), (0.5, 0, -1, 2), 100, 0.01)
        expected = np.array([0, 1, 2, 3]) + 1.0 * np.array([0.5, 0, -1, 2])
        self.assertLess(np.abs(trajectory.positions[-1] - expected).max(), 1e-12)

    def test_equator_is_a_geodesic(self):
        chart = sphere()
        trajectory = geodesic_integrate(LeviCivitaConnection(chart), (math.pi / 2, 0), (0, 1), 10_000, 1e-3)
        norms = trajectory.norms(chart.metric)
        self.assertLess(np.abs(norms - norms[0]).max(), 1e-10)
        self.assertLess(np.abs(trajectory.positions[:, 0] - math.pi / 2).max(), 1e-10)

    def test_schwarzschild_circular_orbit(self):
        chart = schwarzschild()
        x0, u0 = schwarzschild_circular_orbit(6.0)
        self.assertAlmostEqual(np.array(u0) @ chart.metric.matrix_at(x0) @ np.array(u0), 1.0, places=12)
        ds = 0.05
        steps = int(round(orbital_period(6.0) / ds))
        trajectory = geodesic_integrate(LeviCivitaConnection(chart), x0, u0, steps, ds)
        self.assertLess(np.abs(trajectory.positions[:, 0] - 6.0).max(), 1e-6)

    def test_no_circular_orbit_inside_photon_sphere(self):
        with self.assertRaises(StepError):
            schwarzschild_circular_orbit(2.5)

    def test_excluded_region(self):
        with self.assertRaises(SingularMetricError):
            geodesic_integrate(
                LeviCivitaConnection(MINKOWSKI), (0, 0, 0, 0), (1, 0, 0, 0), 10, 0.1, exclude=lambda p: p[0] > 0.25,
            )


class SymplecticTests(SimpleTestCase):
    q, p = Coord(0, 'q'), Coord(1, 'p')

    def two_form(self, coefficient=1):
        return ValuedForm.from_tensor(AlternatingTensor.build(2, 2, {(0, 1): coefficient}))

    def exact(self, *components):
        return ValuedForm.from_tensor(AlternatingTensor.build(2, 1, {(i,): c for i, c in enumerate(components)}))

    def test_bracket_of_proportional_forms_vanishes(self):
        poisson = PoissonFunction(self.two_form(), self.exact(self.q, self.p), self.exact(2 * self.q, 2 * self.p))
        self.assertEqual(poisson.value((0.3, -1.2)), 0)
        self.assertFalse(np.abs(poisson.gradient((0.3, -1.2))).any())

    def test_canonical_bracket(self):
        poisson = PoissonFunction(self.two_form(), self.exact(1, 0), self.exact(self.p, self.q))
        self.assertAlmostEqual(poisson.value((0.3, 0.7)), -0.3, places=14)
        np.testing.assert_allclose(poisson.gradient((0.3, 0.7)), [-1, 0], atol=1e-14)

    def test_gradient_through_a_varying_form(self):
        poisson = PoissonFunction(self.two_form(1 + self.q ** 2), self.exact(1, 0), self.exact(0, 1))
        self.assertAlmostEqual(poisson.value((0.5, 0.0)), -0.8, places=14)
        np.testing.assert_allclose(poisson.gradient((0.5, 0.0)), [0.64, 0], atol=1e-14)

    def test_degenerate_forms(self):
        flat = ValuedForm.from_tensor(AlternatingTensor.build(4, 2, {(0, 1): 1}))
        with self.assertRaises(DegenerateFormError):
            SymplecticForm(flat)
        odd = ValuedForm.from_tensor(AlternatingTensor.build(3, 2, {(0, 1): 1}))
        with self.assertRaises(DegenerateFormError):
            SymplecticForm(odd)

    def test_interior_field(self):
        result = interior_field((1, 0), self.two_form())
        self.assertEqual(result.part('1').components, {(1,): 1})
