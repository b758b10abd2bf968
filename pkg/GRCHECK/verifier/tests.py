import json
import tempfile
import time
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APIClient

from catalog.models import CATALOG_SIZE
from core.conf import grcheck_settings
from core.exceptions import ParameterError
from dsl.binder import load_file, load_text

from .models import DIAGNOSTICS, FAILED, IO_ERROR, RunConfig, run, run_text
from .report import format_value, render_json, render_table

SPECS = Path(grcheck_settings('SPEC_DIR'))
SOLITON = SPECS / 'soliton.grs'
HEISENBERG = SPECS / 'frobenius_nonintegrable.grs'
RICCI = SPECS / 'ricci_flat.grs'
MALFORMED = Path(__file__).resolve().parent.parent / 'dsl' / 'testdata' / 'malformed.grs'

ROTATION = """
chart plane(x, y) metric diag(1, 1)
vector rotation: 1 = -y*dx + x*dy
check moves_x: first_integral(rotation, x) on random(-1..1, -1..1; 20, seed 1) expect fail
check keeps_radius: first_integral(rotation, x^2 + y^2) on random(-1..1, -1..1; 20, seed 1) tol 1e-6
"""


def verify_command(*args, **options):
    out, err = StringIO(), StringIO()
    try:
        call_command('verify', *map(str, args), stdout=out, stderr=err, **options)
    except CommandError as exc:
        return exc.returncode, out.getvalue(), err.getvalue()
    return 0, out.getvalue(), err.getvalue()


class RunConfigTests(SimpleTestCase):

    def test_check_tolerance_wins(self):
        first, second = load_text(ROTATION)
        config = RunConfig(tol=1e-3)
        self.assertEqual(config.tolerance(first), 1e-3)
        self.assertEqual(config.tolerance(second), 1e-6)

    @override_settings(GRCHECK={'DEFAULT_TOL': 1e-7})
    def test_default_tolerance(self):
        first, _ = load_text(ROTATION)
        self.assertEqual(RunConfig().tolerance(first), 1e-7)

    def test_invalid_overrides(self):
        with self.assertRaises(ParameterError):
            RunConfig(tol=0)
        with self.assertRaises(ParameterError):
            RunConfig(points=0)


class RunTests(SimpleTestCase):

    def test_reports_in_declaration_order(self):
        result = run_text(ROTATION)
        self.assertEqual([report.name for report in result.reports], ['moves_x', 'keeps_radius'])
        self.assertEqual((result.passed, result.failed, result.unexpected), (1, 1, 0))
        self.assertEqual(result.exit_code, FAILED)

    def test_fail_fast(self):
        result = run(load_text(ROTATION), RunConfig(fail_fast=True))
        self.assertEqual((len(result.reports), result.skipped), (1, 1))

    def test_point_and_seed_overrides(self):
        result = run_text(ROTATION, RunConfig(points=5, seed=3))
        self.assertEqual(result.reports[0].samples['requested'], 5)
        self.assertEqual(result.reports[0].samples['seed'], 3)

    def test_table(self):
        text = render_table(run_text(ROTATION))
        header, first, second = text.splitlines()[:3]
        self.assertTrue(header.startswith('NAME'))
        self.assertIn('FAIL', first)
        self.assertNotIn('expected', first)
        self.assertIn('PASS', second)
        self.assertTrue(text.endswith('1 passed, 1 failed'))

    def test_unexpected_verdict_is_marked(self):
        source = ROTATION.replace('tol 1e-6', 'tol 1e-6 expect fail')
        result = run_text(source)
        self.assertEqual(result.unexpected, 1)
        self.assertIn('PASS (expected fail)', render_table(result))

    def test_expectations_stay_out_of_the_json(self):
        (check, _) = json.loads(render_json(run_text(ROTATION)))['checks']
        self.assertEqual(check['name'], 'moves_x')
        self.assertNotIn('expect', check)


class SchwarzschildAcceptanceTests(SimpleTestCase):

    def test_vacuum_solution_on_500_points(self):
        (check,) = [check for check in load_file(RICCI) if check.name == 'schwarzschild']
        self.assertEqual(tuple(check.condition.chart.coord_names), ('r', 'th', 'ph', 't'))
        started = time.perf_counter()
        (report,) = run([check]).reports
        self.assertLess(time.perf_counter() - started, 30)
        self.assertTrue(report.passed)
        self.assertEqual((report.requested, report.excluded, report.tol), (500, 0, 1e-8))
        self.assertEqual(len(report.norms), 10)
        self.assertLessEqual(report.linf, 1e-8)


class VerifyCommandTests(SimpleTestCase):

    def test_soliton_passes(self):
        code, out, _ = verify_command(SOLITON)
        self.assertEqual(code, 0)
        rows = [line for line in out.splitlines() if 'autoparallel_vector' in line]
        self.assertEqual(len(rows), 1)
        self.assertIn('PASS', rows[0])
        self.assertIn('1000/1000', rows[0])

    def test_heisenberg_fails(self):
        code, out, _ = verify_command(HEISENBERG, json=True)
        self.assertEqual(code, FAILED)
        (check,) = json.loads(out)['checks']
        self.assertFalse(check['pass'])
        self.assertAlmostEqual(max(norm['linf'] for norm in check['norms'].values()), 1.0, places=12)

    def test_json_document(self):
        code, out, _ = verify_command(SOLITON, json=True, points=50)
        document = json.loads(out)
        self.assertEqual(document['version'], 1)
        (check,) = document['checks']
        self.assertEqual(
            list(check), ['name', 'entry', 'samples', 'norms', 'tol', 'pass', 'worst_point'],
        )
        self.assertEqual(check['samples'], {'requested': 50, 'excluded': 0, 'seed': 7})
        self.assertEqual(check['tol'], 1e-9)
        self.assertEqual(len(check['worst_point']), 4)

    def test_json_is_reproducible(self):
        first = verify_command(HEISENBERG, json=True)[1]
        second = verify_command(HEISENBERG, json=True, workers=3)[1]
        self.assertEqual(first, second)

    def test_tol_override(self):
        code, _, _ = verify_command(HEISENBERG, tol=2.0)
        self.assertEqual(code, 0)

    def test_malformed_file(self):
        code, out, err = verify_command(MALFORMED)
        self.assertEqual(code, DIAGNOSTICS)
        self.assertEqual(out, '')
        self.assertIn(f"{MALFORMED}:2:12: error: expected expression after '+'", err)

    def test_missing_file(self):
        code, _, _ = verify_command(SPECS / 'missing.grs')
        self.assertEqual(code, IO_ERROR)

    def test_fail_fast(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'rotation.grs'
            path.write_text(ROTATION, encoding='utf-8')
            code, out, _ = verify_command(path, fail_fast=True)
        self.assertEqual(code, FAILED)
        self.assertIn('0 passed, 1 failed, 1 skipped', out)

    def test_bad_override(self):
        code, _, _ = verify_command(SOLITON, points=0)
        self.assertEqual(code, DIAGNOSTICS)


class CatalogCommandTests(SimpleTestCase):

    def test_listing(self):
        out = StringIO()
        call_command('catalog', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(len(lines), CATALOG_SIZE + 1)
        self.assertTrue(any(line.startswith('ext_maxwell_vacuum') for line in lines))
        (ricci,) = [line for line in lines if line.startswith('ricci_flat')]
        self.assertIn('metric: chart', ricci)

    def test_json_listing(self):
        out = StringIO()
        call_command('catalog', json=True, stdout=out)
        self.assertEqual(len(json.loads(out.getvalue())), CATALOG_SIZE)


class EvalCommandTests(SimpleTestCase):

    def evaluate(self, *args, **options):
        out = StringIO()
        call_command('eval', *args, stdout=out, stderr=StringIO(), **options)
        return out.getvalue().strip()

    def test_precedence(self):
        self.assertEqual(self.evaluate('2+3*4^2'), '50')

    def test_point(self):
        self.assertEqual(self.evaluate('x*y - 1', at='x=2,y=3'), '5')
        self.assertEqual(self.evaluate('exp(i*x)', at='x=0'), '1')

    def test_complex_value(self):
        self.assertEqual(format_value(2 - 0.5j), '2-0.5j')

    def test_bad_point(self):
        with self.assertRaises(CommandError) as caught:
            self.evaluate('x', at='x')
        self.assertEqual(caught.exception.returncode, DIAGNOSTICS)

    def test_undeclared_name(self):
        with self.assertRaises(CommandError) as caught:
            self.evaluate('x + y', at='x=1')
        self.assertEqual(caught.exception.returncode, DIAGNOSTICS)


class VerifierApiTests(SimpleTestCase):

    def setUp(self):
        self.client = APIClient()

    def test_verify(self):
        response = self.client.post(
            reverse('verify'), {'source': SOLITON.read_text(encoding='utf-8'), 'points': 40}, format='json',
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        (check,) = response.data['checks']
        self.assertTrue(check['pass'])
        self.assertEqual(check['samples']['requested'], 40)

    def test_verify_reports_diagnostics(self):
        response = self.client.post(reverse('verify'), {'source': 'field f = 2 +'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        (diagnostic,) = response.data['diagnostics']
        self.assertEqual((diagnostic['line'], diagnostic['column']), (1, 12))

    def test_verify_rejects_nonpositive_tol(self):
        response = self.client.post(reverse('verify'), {'source': ROTATION, 'tol': -1}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('tol', response.data)

    def test_eval(self):
        response = self.client.post(reverse('eval'), {'expr': 'x^2 + 1', 'at': {'x': 3}}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual((response.data['real'], response.data['imag']), (10.0, 0.0))

    def test_eval_diagnostics(self):
        response = self.client.post(reverse('eval'), {'expr': 'sin(', 'at': {}}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('diagnostics', response.data)
