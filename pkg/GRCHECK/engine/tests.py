import math

from django.test import SimpleTestCase

from core.exceptions import DegreeError, DimensionError, EmptySampleSet, UnknownOperator
from diffops.exterior import d_tensor
from diffops.models import LeviCivitaConnection, tangent_function, vector_tensor
from exterior.algebra import hodge
from exterior.models import AlternatingTensor, Chart, MetricSpec
from fields.models import Coord, bump, exp, sin
from fields.sampling import SampleSet
from valued.models import ValuedForm, ValueSpace
from valued.phi import FunctionProduct, SymmetrizedProduct

from .evaluation import bind, residual, verify
from .models import IDENTITY, VECTOR, ClauseSpec, ConditionSpec, unit

x, y, z, xi = (Coord(i, name) for i, name in enumerate(('x', 'y', 'z', 'xi')))
MINKOWSKI = Chart('flat', ('x', 'y', 'z', 'xi'), MetricSpec.minkowski())
PLANE = Chart('plane', ('x', 'y'), MetricSpec.euclidean(2))
ETA = MINKOWSKI.metric.constant_matrix
V = ValueSpace.numbered('V', 2)
BOX = SampleSet.random([(-2, 2)] * 4, 200, seed=7)


def plane_wave_field():
    return d_tensor(AlternatingTensor.build(4, 1, {(0,): sin(z - xi)}))


def maxwell_form(field):
    return ValuedForm.build(4, 2, V, {'e1': field, 'e2': hodge(field, ETA)})


def maxwell(field, rhs=None):
    clause = ClauseSpec('scalar_multiply', FunctionProduct(V), 'd', maxwell_form(field), sigma=unit(4), rhs=rhs)
    return bind(ConditionSpec('maxwell', MINKOWSKI, (clause,), 'maxwell_vacuum'))


def extended_maxwell(field):
    clause = ClauseSpec('interior_after_tilde', SymmetrizedProduct(V), 'd', maxwell_form(field), derive=IDENTITY)
    return bind(ConditionSpec('ext', MINKOWSKI, (clause,), 'ext_maxwell_vacuum'))


def first_integral(f, chart=PLANE, components=None):
    px, py = chart.coords
    components = components or (-py, px)
    clause = ClauseSpec(
        'interior', FunctionProduct(), 'd',
        ValuedForm.from_tensor(AlternatingTensor.scalar(chart.dim, f)),
        sigma=ValuedForm.from_tensor(vector_tensor(components)),
    )
    return bind(ConditionSpec('first', chart, (clause,), 'first_integral'))


def soliton():
    alpha = 2 / math.sqrt(3)
    f = exp(-(x ** 2) - y ** 2) * bump(alpha * (z - 0.5 * xi))
    clause = ClauseSpec(
        'interior', FunctionProduct(ValueSpace.tangent(MINKOWSKI)), 'covariant_d',
        tangent_function(MINKOWSKI, (0, 0, 0.5 * f, f)),
        derive=VECTOR, operator_args={'connection': LeviCivitaConnection(MINKOWSKI)},
    )
    return bind(ConditionSpec('soliton', MINKOWSKI, (clause,), 'autoparallel_vector'))


class BindTests(SimpleTestCase):

    def test_maxwell_shape(self):
        condition = maxwell(plane_wave_field())
        self.assertEqual(condition.clauses[0].degree, 3)
        self.assertEqual(condition.labels, ('e1', 'e2'))

    def test_extended_maxwell_has_three_labels(self):
        self.assertEqual(extended_maxwell(plane_wave_field()).labels, ('e1∨e1', 'e1∨e2', 'e2∨e2'))

    def test_d_of_a_top_form(self):
        top = ValuedForm.from_tensor(AlternatingTensor.basis(4, (0, 1, 2, 3)))
        clause = ClauseSpec('scalar_multiply', FunctionProduct(), 'd', top, sigma=unit(4))
        with self.assertRaises(DegreeError):
            bind(ConditionSpec('top', MINKOWSKI, (clause,)))

    def test_unknown_operator(self):
        clause = ClauseSpec('scalar_multiply', FunctionProduct(), 'curl', unit(4), sigma=unit(4))
        with self.assertRaises(UnknownOperator):
            bind(ConditionSpec('curl', MINKOWSKI, (clause,)))

    def test_chart_mismatch(self):
        clause = ClauseSpec('scalar_multiply', FunctionProduct(V), 'd', maxwell_form(plane_wave_field()), sigma=unit(4))
        with self.assertRaises(DimensionError):
            bind(ConditionSpec('mixed', PLANE, (clause,)))

    def test_value_space_mismatch(self):
        clause = ClauseSpec('scalar_multiply', FunctionProduct(), 'd', maxwell_form(plane_wave_field()), sigma=unit(4))
        with self.assertRaises(DimensionError):
            bind(ConditionSpec('mismatch', MINKOWSKI, (clause,)))

    def test_rhs_degree_checked(self):
        rhs = ValuedForm.zero(4, 2, V)
        with self.assertRaises(DegreeError):
            maxwell(plane_wave_field(), rhs=rhs)

    def test_needs_sigma_or_derivation(self):
        clause = ClauseSpec('scalar_multiply', FunctionProduct(), 'd', unit(4))
        with self.assertRaises(DimensionError):
            bind(ConditionSpec('bare', MINKOWSKI, (clause,)))

    def test_clause_labels_are_prefixed(self):
        f = ValuedForm.from_tensor(AlternatingTensor.scalar(2, x))
        clauses = (
            ClauseSpec('scalar_multiply', FunctionProduct(), 'd', f, sigma=unit(2), label='a'),
            ClauseSpec('scalar_multiply', FunctionProduct(), 'identity', f, sigma=unit(2), label='b'),
        )
        condition = bind(ConditionSpec('two', PLANE, clauses))
        self.assertEqual(condition.labels, ('a:1', 'b:1'))


class ResidualTests(SimpleTestCase):

    def test_plane_wave_is_a_vacuum_solution(self):
        values = residual(maxwell(plane_wave_field()), (0.3, -0.7, 1.1, 0.4))
        self.assertLess(max(part.max_abs() for part in values.values()), 1e-12)

    def test_soliton_is_autoparallel(self):
        condition = soliton()
        for point in ((0.1, 0.2, 0.3, 0.1), (-0.5, 0.4, 0.2, 0.6), (1.0, -1.0, 0.0, 0.0)):
            values = residual(condition, point)
            self.assertLess(max(part.max_abs() for part in values.values()), 1e-10)

    def test_rotation_invariant_first_integral(self):
        px, py = PLANE.coords
        values = residual(first_integral(px ** 2 + py ** 2), (0.8, -1.3))
        self.assertLess(values['1'].max_abs(), 1e-14)

    def test_non_invariant_function(self):
        px, _ = PLANE.coords
        values = residual(first_integral(px), (0.5, 2.0))
        self.assertAlmostEqual(abs(values['1'].get(())), 2.0)

    def test_rhs_is_subtracted(self):
        field = AlternatingTensor.build(4, 2, {(1, 2): x})
        source = ValuedForm.from_tensor(AlternatingTensor.basis(4, (0, 1, 3)), V, 'e2')
        point = (0.2, 0.4, -0.3, 0.9)
        bare = residual(maxwell(field), point)
        loaded = residual(maxwell(field, rhs=source), point)
        for label in ('e1', 'e2'):
            expected = bare[label] - source.at(point).part(label)
            self.assertEqual(loaded[label].components, expected.components)

    def test_scaling_covariance(self):
        px, py = PLANE.coords
        point = (0.7, -0.2)
        single = residual(first_integral(px * py), point)['1'].get(())
        triple = residual(first_integral(3 * px * py), point)['1'].get(())
        self.assertAlmostEqual(triple, 3 * single)

    def test_autoparallel_scales_quadratically(self):
        field = AlternatingTensor.build(4, 2, {(0, 2): y})
        point = (0.3, 0.5, -0.4, 0.2)
        single = residual(extended_maxwell(field), point)
        double = residual(extended_maxwell(field.scale(2)), point)
        for label, part in single.items():
            for key, value in part.components.items():
                self.assertAlmostEqual(double[label].get(key), 4 * value)


class VerifyTests(SimpleTestCase):

    def test_extended_maxwell_plane_wave_passes(self):
        report = verify(extended_maxwell(plane_wave_field()), SampleSet.random([(-2, 2)] * 4, 1000, seed=7), tol=1e-9)
        self.assertTrue(report.passed)
        self.assertEqual(set(report.norms), {'e1∨e1', 'e1∨e2', 'e2∨e2'})
        self.assertEqual(report.samples['requested'], 1000)

    def test_failing_condition(self):
        px, _ = PLANE.coords
        report = verify(first_integral(px), SampleSet.grid([(-1, 1), (-1, 1)], 5), tol=1e-9)
        self.assertFalse(report.passed)
        self.assertEqual(report.linf, 1.0)
        self.assertEqual(abs(report.worst_point[1]), 1.0)
        self.assertEqual(report.verdict, 'fail')

    def test_norms(self):
        px, _ = PLANE.coords
        report = verify(first_integral(px), SampleSet.grid([(0, 0), (-1, 1)], 3), tol=1e-9)
        self.assertAlmostEqual(report.norms['1'].rms, math.sqrt(2 / 3))

    def test_singular_points_are_excluded(self):
        px, _ = PLANE.coords
        samples = SampleSet.grid([(-1, 1), (-1, 1)], 3)
        report = verify(first_integral(1 / px, components=(1, 0)), samples)
        self.assertEqual(report.excluded, 3)
        self.assertEqual(report.evaluated + report.excluded, report.requested)

    def test_out_of_domain_points_are_excluded(self):
        px, _ = PLANE.coords
        # d(x^(3/2)) needs sqrt(x); the x = -1 column is outside its domain
        report = verify(first_integral(px ** 1.5, components=(1, 0)), SampleSet.grid([(-1, 1), (-1, 1)], 3))
        self.assertEqual((report.evaluated, report.excluded), (6, 3))
        self.assertEqual(report.linf, 1.5)
        self.assertEqual(report.worst_point[0], 1.0)

    def test_predicate_exclusions_are_counted(self):
        px, py = PLANE.coords
        samples = SampleSet.grid([(-1, 1), (-1, 1)], 4, exclude=lambda point: point[0] > 0)
        report = verify(first_integral(px ** 2 + py ** 2), samples)
        self.assertEqual((report.evaluated, report.excluded), (8, 8))
        self.assertTrue(report.passed)

    def test_everything_excluded(self):
        px, _ = PLANE.coords
        samples = SampleSet.grid([(-1, 1), (-1, 1)], 2, exclude=lambda point: True)
        with self.assertRaises(EmptySampleSet):
            verify(first_integral(px), samples)

    def test_same_seed_same_report(self):
        condition = maxwell(AlternatingTensor.build(4, 2, {(1, 2): x * y}))
        self.assertEqual(verify(condition, BOX), verify(condition, BOX))

    def test_workers_do_not_change_the_report(self):
        condition = extended_maxwell(AlternatingTensor.build(4, 2, {(0, 2): y}))
        self.assertEqual(verify(condition, BOX, workers=1), verify(condition, BOX, workers=4))

    def test_expectation_is_recorded(self):
        px, _ = PLANE.coords
        report = verify(first_integral(px), SampleSet.grid([(-1, 1), (-1, 1)], 3), expect='fail')
        self.assertEqual(report.expect, 'fail')
        self.assertTrue(report.meets_expectation)
