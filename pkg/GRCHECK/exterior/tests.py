from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.exceptions import DegreeError, DimensionError, SingularMetricError, VarianceError

from .algebra import (
    hodge, induced_inner, interior, metric_pairing, musical_tilde, volume_form, wedge,
)
from .models import CONTRAVARIANT, AlternatingTensor, Chart, MetricSpec, multi_indices

X, Y, Z, XI = range(4)
ETA = MetricSpec.minkowski().constant_matrix


def form(*indices, coefficient=1):
    return AlternatingTensor.basis(4, indices, coefficient=coefficient)


def vector(*indices, coefficient=1):
    return AlternatingTensor.basis(4, indices, CONTRAVARIANT, coefficient=coefficient)


def tensors(degree, variance='covariant'):
    coefficients = st.one_of(
        st.integers(-5, 5),
        st.fractions(min_value=-3, max_value=3, max_denominator=7),
    )
    keys = st.sampled_from(multi_indices(4, degree))
    return st.dictionaries(keys, coefficients, max_size=6).map(
        lambda components: AlternatingTensor.build(4, degree, components, variance)
    )


class TensorAssertions:

    def assertTensorAlmostEqual(self, first, second, delta=1e-12):
        self.assertEqual((first.degree, first.variance), (second.degree, second.variance))
        for key in set(first.components) | set(second.components):
            self.assertLess(abs(first.get(key) - second.get(key)), delta, key)


class ChartTests(SimpleTestCase):

    def test_metric_dimension_must_match(self):
        with self.assertRaises(DimensionError):
            Chart('bad', ('x', 'y'), MetricSpec.minkowski())

    def test_coordinate_names_unique(self):
        with self.assertRaises(DimensionError):
            Chart('bad', ('x', 'x'), MetricSpec.euclidean(2))

    def test_dimension_bound(self):
        with self.assertRaises(DimensionError):
            Chart('big', tuple(f"x{i}" for i in range(9)), MetricSpec.euclidean(9))

    def test_zero_diagonal_is_singular(self):
        with self.assertRaises(SingularMetricError):
            MetricSpec.diagonal_constant((1, 0))

    def test_expression_metric_is_symmetric(self):
        chart = Chart('polar', ('r', 'theta'), MetricSpec.euclidean(2))
        r, theta = chart.coords
        metric = MetricSpec.from_rows([[1, r], [0, r ** 2]])
        g = metric.matrix_at((2.0, 0.0))
        self.assertEqual(g.tolist(), [[1.0, 2.0], [2.0, 4.0]])
        self.assertFalse(metric.is_constant)

    def test_singular_expression_metric(self):
        chart = Chart('polar', ('r', 'theta'), MetricSpec.euclidean(2))
        r, _ = chart.coords
        metric = MetricSpec.from_rows([[1, 0], [0, r ** 2]])
        with self.assertRaises(SingularMetricError):
            metric.inverse_at((0.0, 1.0))


class WedgeTests(TensorAssertions, SimpleTestCase):

    def test_antisymmetry(self):
        self.assertEqual(wedge(form(X), form(Y)), -wedge(form(Y), form(X)))
        self.assertEqual(form(Y, X), -form(X, Y))

    def test_even_permutation_to_volume(self):
        self.assertEqual(wedge(form(X, Y), form(Z, XI)).components, {(0, 1, 2, 3): 1})

    def test_nilpotent(self):
        self.assertTrue(wedge(form(X), form(X)).is_zero())

    def test_degree_overflow(self):
        with self.assertRaises(DegreeError):
            wedge(form(X, Y, Z), form(X, Y))

    def test_variance_mismatch(self):
        with self.assertRaises(VarianceError):
            wedge(form(X), vector(Y))

    @settings(derandomize=True, max_examples=50, deadline=None)
    @given(tensors(1), tensors(1), tensors(2), st.integers(-4, 4))
    def test_bilinear(self, a, b, c, k):
        self.assertEqual(wedge(a.scale(k) + b, c), wedge(a, c).scale(k) + wedge(b, c))

    @settings(derandomize=True, max_examples=50, deadline=None)
    @given(tensors(1), tensors(2), tensors(1))
    def test_associative(self, a, b, c):
        self.assertEqual(wedge(wedge(a, b), c), wedge(a, wedge(b, c)))

    @settings(derandomize=True, max_examples=50, deadline=None)
    @given(st.integers(0, 4), st.integers(0, 4), st.data())
    def test_graded_commutative(self, p, q, data):
        if p + q > 4:
            return
        a, b = data.draw(tensors(p)), data.draw(tensors(q))
        self.assertEqual(wedge(a, b), wedge(b, a).scale((-1) ** (p * q)))


class InteriorTests(TensorAssertions, SimpleTestCase):

    def test_first_slot(self):
        self.assertEqual(interior(vector(X), form(X, Y)), form(Y))

    def test_composition_order(self):
        self.assertEqual(interior(vector(Z, XI), form(Z, XI)).components, {(): 1})

    def test_two_vector_into_three_form(self):
        self.assertEqual(interior(vector(X, Y), form(X, Y, Z)), form(Z))

    def test_degree_too_high(self):
        with self.assertRaises(DegreeError):
            interior(vector(X, Y), form(X))

    @settings(derandomize=True, max_examples=50, deadline=None)
    @given(tensors(1, CONTRAVARIANT), tensors(3))
    def test_twice_is_zero(self, v, w):
        self.assertTrue(interior(v, interior(v, w)).is_zero())

    @settings(derandomize=True, max_examples=50, deadline=None)
    @given(tensors(1, CONTRAVARIANT), tensors(1), tensors(2))
    def test_leibniz(self, v, a, b):
        left = interior(v, wedge(a, b))
        right = wedge(interior(v, a), b) - wedge(a, interior(v, b))
        self.assertEqual(left, right)


class HodgeTests(TensorAssertions, SimpleTestCase):

    def test_minkowski_examples(self):
        self.assertEqual(hodge(form(X, Y), ETA), form(Z, XI))
        self.assertEqual(hodge(form(Z, XI), ETA), -form(X, Y))

    def test_double_star_on_every_basis_form(self):
        sign_det = np.sign(np.linalg.det(ETA))
        for p in range(5):
            for key in multi_indices(4, p):
                basis = form(*key)
                expected = basis.scale(int((-1) ** (p * (4 - p)) * sign_det))
                self.assertEqual(hodge(hodge(basis, ETA), ETA), expected)

    def test_defining_relation_on_basis_pairs(self):
        volume = volume_form(ETA)
        for p in range(5):
            for left in multi_indices(4, p):
                for right in multi_indices(4, p):
                    a, b = form(*left), form(*right)
                    expected = volume.scale(induced_inner(a, b, ETA))
                    self.assertEqual(wedge(a, hodge(b, ETA)), expected)

    def test_defining_relation_for_a_general_metric(self):
        g = np.array([[2.0, 0.5, 0.0], [0.5, 3.0, 0.2], [0.0, 0.2, -1.0]])
        volume = volume_form(g)
        for p in range(4):
            for left in multi_indices(3, p):
                for right in multi_indices(3, p):
                    a = AlternatingTensor.basis(3, left)
                    b = AlternatingTensor.basis(3, right)
                    expected = volume.scale(induced_inner(a, b, g))
                    self.assertTensorAlmostEqual(wedge(a, hodge(b, g)), expected)

    def test_singular_metric(self):
        with self.assertRaises(SingularMetricError):
            hodge(form(X), np.zeros((4, 4)))


class MusicalTests(TensorAssertions, SimpleTestCase):

    def test_raise_spatial_pair(self):
        self.assertEqual(musical_tilde(form(X, Y), ETA), vector(X, Y))

    def test_raise_mixed_pair(self):
        self.assertEqual(musical_tilde(form(Z, XI), ETA), -vector(Z, XI))

    @settings(derandomize=True, max_examples=40, deadline=None)
    @given(tensors(2))
    def test_involution(self, w):
        g = np.array([[2.0, 0.5, 0, 0], [0.5, -1.0, 0, 0], [0, 0, 3.0, 0.1], [0, 0, 0.1, 1.0]])
        back = musical_tilde(musical_tilde(w.map(complex), g), g)
        self.assertTensorAlmostEqual(back, w.map(complex), delta=1e-10)

    def test_interior_of_raised_form_is_the_pairing(self):
        g = np.array([[2.0, 0.5, 0, 0], [0.5, -1.0, 0, 0], [0, 0, 3.0, 0.1], [0, 0, 0.1, 1.0]])
        a = form(X, coefficient=2) + form(Z, coefficient=-1)
        b = form(Y) + form(XI, coefficient=Fraction(1, 2))
        contracted = interior(musical_tilde(a, g), b).get(())
        self.assertAlmostEqual(contracted, metric_pairing(a, b, g), places=12)


class PairingTests(SimpleTestCase):

    def test_signature_read_off(self):
        self.assertEqual(metric_pairing(form(XI), form(XI), ETA), 1)
        self.assertEqual(metric_pairing(form(X), form(X), ETA), -1)
        self.assertEqual(metric_pairing(form(X), form(Y), ETA), 0)

    def test_only_one_forms(self):
        with self.assertRaises(DegreeError):
            metric_pairing(form(X, Y), form(X, Y), ETA)
