import math
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.exceptions import DomainError, EvalSingularity

from .bump import bump_value
from .calculus import differentiate, fd_diff
from .models import Bump, Const, Coord, bump, cos, exp, sin
from .sampling import SampleSet

x, y, z, xi = (Coord(i, name) for i, name in enumerate(('x', 'y', 'z', 'xi')))


def polynomial_trees():
    leaves = st.one_of(
        st.sampled_from([x, y, z, xi]),
        st.integers(min_value=-3, max_value=3).map(lambda v: Const(complex(v))),
    )

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda ab: ab[0] + ab[1]),
            st.tuples(children, children).map(lambda ab: ab[0] * ab[1]),
            st.tuples(children, children).map(lambda ab: ab[0] - ab[1]),
            children.map(sin),
            children.map(cos),
        )
    return st.recursive(leaves, extend, max_leaves=8)


class EvaluationTests(SimpleTestCase):

    def test_sum_of_squares(self):
        self.assertEqual((x ** 2 + y ** 2).evaluate((3, 4, 0, 0)), 25)

    def test_bump_outside_support_is_exactly_zero(self):
        self.assertEqual(bump(z - xi).evaluate((0, 0, 5, 0)), 0)

    def test_exp(self):
        self.assertAlmostEqual(exp(-x ** 2).evaluate((1, 0, 0, 0)).real, math.exp(-1), places=14)

    def test_division_by_zero_is_a_singularity(self):
        with self.assertRaises(EvalSingularity):
            (1 / x).evaluate((0, 0, 0, 0))

    def test_half_power_of_negative_base(self):
        with self.assertRaises(DomainError):
            (x ** Fraction(1, 2)).evaluate((-1, 0, 0, 0))

    def test_exponent_must_be_integer_or_half(self):
        with self.assertRaises(DomainError):
            x ** 0.3

    def test_complex_constants(self):
        wave = exp(Const(1j) * (2 * x - 2 * xi))
        self.assertAlmostEqual(abs(wave.evaluate((0.3, 0, 0, 1.1))), 1.0, places=14)


class DifferentiationTests(SimpleTestCase):

    def test_product(self):
        derivative = differentiate(x * y, 0)
        self.assertEqual(derivative.evaluate((2, 5, 0, 0)), 5)

    def test_chain_rule_through_sin(self):
        derivative = differentiate(sin(z - xi), 3)
        point = (0, 0, 0.4, -0.7)
        self.assertAlmostEqual(derivative.evaluate(point).real, -math.cos(0.4 + 0.7), places=14)

    def test_constant_derivative_is_literal_zero(self):
        derivative = differentiate(y * y, 0)
        self.assertIsInstance(derivative, Const)
        self.assertEqual(derivative.value, 0)

    @settings(derandomize=True, max_examples=60, deadline=None)
    @given(polynomial_trees(), st.lists(st.floats(-1, 1), min_size=4, max_size=4))
    def test_mixed_partials_commute(self, tree, point):
        xy = differentiate(differentiate(tree, 0), 1).evaluate(point)
        yx = differentiate(differentiate(tree, 1), 0).evaluate(point)
        self.assertLess(abs(xy - yx), 1e-10)

    def test_bump_derivatives_vanish_outside_support(self):
        for order in range(3):
            for s in (1.0, -1.0, 1.5, -7.0):
                self.assertEqual(bump_value(s, order), 0.0)

    def test_bump_derivatives_are_continuous_at_the_boundary(self):
        for order in range(3):
            self.assertLess(abs(bump_value(1 - 1e-3, order)), 1e-12)
            self.assertLess(abs(bump_value(-1 + 1e-3, order)), 1e-12)

    def test_bump_derivative_matches_finite_difference(self):
        profile = exp(-x ** 2 - y ** 2) * bump(2 * (z - 0.5 * xi))
        for axis in range(4):
            derivative = differentiate(profile, axis)
            for point in ((0.1, -0.2, 0.3, 0.1), (0.5, 0.4, -0.2, 0.3)):
                exact = derivative.evaluate(point)
                approx = fd_diff(profile, axis, point, h=1e-4)
                self.assertLessEqual(abs(exact - approx), max(1e-7, 1e-6 * abs(exact)))

    def test_second_bump_derivative_node(self):
        second = differentiate(differentiate(bump(x), 0), 0)
        self.assertEqual(second.evaluate((2, 0, 0, 0)), 0)
        self.assertIsInstance(differentiate(bump(x), 0), Bump)


class FiniteDifferenceTests(SimpleTestCase):

    def test_square(self):
        self.assertAlmostEqual(fd_diff(x ** 2, 0, (1, 0, 0, 0), h=1e-3).real, 2.0, delta=1e-9)

    def test_flat_region_of_bump(self):
        self.assertEqual(fd_diff(bump(z), 2, (0, 0, 2, 0), h=1e-3), 0)

    def test_fourth_order_convergence(self):
        tree = sin(x) * exp(y)
        point = (0.3, 0.2, 0, 0)
        exact = differentiate(tree, 0).evaluate(point)
        coarse = abs(fd_diff(tree, 0, point, h=0.1) - exact)
        fine = abs(fd_diff(tree, 0, point, h=0.05) - exact)
        self.assertTrue(12 <= coarse / fine <= 20)

    def test_rejects_non_positive_step(self):
        with self.assertRaises(ValueError):
            fd_diff(x, 0, (0, 0, 0, 0), h=0)


class SampleSetTests(SimpleTestCase):

    def test_grid_is_tensor_product(self):
        samples = SampleSet.grid([(0, 1), (0, 2)], 3)
        points = samples.points()
        self.assertEqual(points.shape, (9, 2))
        self.assertEqual(samples.requested, 9)
        self.assertEqual(list(points[1]), [0.0, 1.0])

    def test_random_is_seeded(self):
        first = SampleSet.random([(-2, 2)] * 4, 10, seed=7).points()
        second = SampleSet.random([(-2, 2)] * 4, 10, seed=7).points()
        self.assertTrue((first == second).all())
        self.assertTrue((abs(first) <= 2).all())

    def test_exclusion_predicate(self):
        samples = SampleSet.grid([(-1, 1)], 3, exclude=lambda p: p[0] == 0)
        excluded = [samples.is_excluded(p) for p in samples.points()]
        self.assertEqual(excluded, [False, True, False])

    def test_invalid_sets(self):
        with self.assertRaises(ValueError):
            SampleSet.grid([(0, 1)], 0)
        with self.assertRaises(ValueError):
            SampleSet.random([(0, float('inf'))], 5, seed=1)

    def test_overrides_only_touch_random_sets(self):
        grid = SampleSet.grid([(0, 1)], 4)
        self.assertIs(grid.with_overrides(count=10), grid)
        drawn = SampleSet.random([(0, 1)], 4, seed=1).with_overrides(count=10, seed=3)
        self.assertEqual((drawn.count, drawn.seed), (10, 3))
