from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APIClient

from core.exceptions import (
    DegenerateFormError, DimensionError, MissingParameter, ParameterError, UnknownEntry, UnknownName,
)
from engine.evaluation import verify
from exterior.models import AlternatingTensor, Chart, MetricSpec
from fields.models import Coord
from valued.models import ValuedForm

from .entries import build
from .fixtures import fixtures, spec_path
from .models import CATALOG, CATALOG_SIZE, catalog_list, get_entry

PLANE = Chart('plane', ('x', 'y'), MetricSpec.euclidean(2))
PHASE = Chart('phase', ('q1', 'p1', 'q2', 'p2'), MetricSpec.euclidean(4))
MINKOWSKI = Chart('minkowski', ('x', 'y', 'z', 'xi'), MetricSpec.minkowski())
x, y = PLANE.coords


def two_form(dim, i, j):
    return ValuedForm.from_tensor(AlternatingTensor.basis(dim, (i, j)))


class CatalogRegistryTests(SimpleTestCase):

    def test_catalog_size(self):
        self.assertEqual(len(CATALOG), CATALOG_SIZE)
        self.assertEqual(CATALOG_SIZE, 27)

    def test_list_is_alphabetical(self):
        ids = [entry.id for entry in catalog_list()]
        self.assertEqual(ids, sorted(ids))
        self.assertEqual(len(ids), len(set(ids)))

    def test_signature(self):
        entry = get_entry('nabla_parallel')
        self.assertEqual(entry.signature, "X: vector, sigma: vector, connection: connection = 'levi_civita'")

    def test_chart_parameter(self):
        self.assertEqual(get_entry('ricci_flat').condition_chart, 'metric')
        self.assertIsNone(get_entry('first_integral').condition_chart)

    def test_unknown_entry(self):
        with self.assertRaises(UnknownEntry):
            build('no_such_entry', PLANE, {})


class BuildTests(SimpleTestCase):

    def test_first_integral(self):
        condition = build('first_integral', PLANE, {'X': [-y, x], 'f': x * x + y * y}, name='rotation')
        self.assertEqual((condition.name, condition.entry), ('rotation', 'first_integral'))
        self.assertEqual(condition.chart, PLANE)

    def test_missing_parameter(self):
        with self.assertRaisesMessage(MissingParameter, "parameter 'f'"):
            build('first_integral', PLANE, {'X': [-y, x]})

    def test_unknown_parameter(self):
        with self.assertRaisesMessage(UnknownName, "no parameter 'g'"):
            build('first_integral', PLANE, {'X': [-y, x], 'f': x, 'g': 1})

    def test_wrong_kind(self):
        with self.assertRaisesMessage(ParameterError, "expects a scalar field"):
            build('first_integral', PLANE, {'X': [-y, x], 'f': 'text'})

    def test_degenerate_symplectic_form(self):
        with self.assertRaises(DegenerateFormError):
            build('symplectic_closed', PHASE, {'omega': two_form(4, 0, 1)})

    def test_current_count(self):
        field = two_form(4, 0, 3)
        current = ValuedForm.from_tensor(AlternatingTensor.basis(4, (0,)))
        with self.assertRaisesMessage(ParameterError, "four currents"):
            build('ext_maxwell_currents', MINKOWSKI, {'F': field, 'J': [current] * 3})

    def test_maxwell_needs_constant_metric(self):
        r, th = Coord(0, 'r'), Coord(1, 'th')
        polar = Chart('polar', ('r', 'th'), MetricSpec.from_rows([[1, 0], [0, r * r]]))
        with self.assertRaisesMessage(DimensionError, "constant metric"):
            build('maxwell_vacuum', polar, {'F': two_form(2, 0, 1)})

    def test_unknown_product(self):
        psi = ValuedForm.from_tensor(AlternatingTensor.basis(2, (0,)))
        with self.assertRaisesMessage(ParameterError, "Unknown product 'tensor'"):
            build('autoparallel_valued_form', PLANE, {'psi': psi, 'product': 'tensor'})


class FixtureTests(SimpleTestCase):
    """Every entry ships a spec file with a passing and a failing fixture."""

    def test_every_entry_has_a_spec_file(self):
        for entry in catalog_list():
            with self.subTest(entry=entry.id):
                self.assertTrue(spec_path(entry.id).is_file())

    def test_fixtures_reproduce_their_verdicts(self):
        for entry in catalog_list():
            checks = fixtures(entry.id)
            with self.subTest(entry=entry.id):
                self.assertEqual({check.expect for check in checks}, {'pass', 'fail'})
            for check in checks:
                with self.subTest(entry=entry.id, check=check.name):
                    report = verify(check.condition, check.samples, tol=check.tol, expect=check.expect)
                    self.assertTrue(
                        report.meets_expectation,
                        f"{check.name}: expected {check.expect}, L-inf {report.linf:.3g} against tol {report.tol:g}",
                    )

    def test_failing_fixture_norms(self):
        (dilation,) = [check for check in fixtures('hamiltonian_field') if check.expect == 'fail']
        (off_shell,) = [check for check in fixtures('schrodinger') if check.name == 'dispersion_violated']
        for check in (dilation, off_shell):
            with self.subTest(check=check.name):
                self.assertAlmostEqual(verify(check.condition, check.samples).linf, 1.0, places=12)

    def test_unknown_fixture_entry(self):
        with self.assertRaises(UnknownEntry):
            fixtures('no_such_entry')


class CatalogApiTests(SimpleTestCase):

    def setUp(self):
        self.client = APIClient()

    def test_list(self):
        response = self.client.get(reverse('catalog-list'))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.data), CATALOG_SIZE)
        first = response.data[0]
        self.assertEqual(first['id'], 'absolute_invariant')
        self.assertEqual(first['signature'], 'X: vector, alpha: form')
        self.assertEqual([p['name'] for p in first['parameters']], ['X', 'alpha'])

    def test_defaults_are_listed(self):
        response = self.client.get(reverse('catalog-list'))
        entry = next(item for item in response.data if item['id'] == 'schrodinger')
        hbar = next(p for p in entry['parameters'] if p['name'] == 'hbar')
        self.assertEqual((hbar['required'], hbar['default']), (False, 1.0))
