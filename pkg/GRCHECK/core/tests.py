from django.test import SimpleTestCase, override_settings

from .conf import grcheck_settings
from .exceptions import EvalSingularity, GRCheckError, PointwiseError, SingularMetricError


class GRCheckSettingsTests(SimpleTestCase):

    @override_settings(GRCHECK={'DEFAULT_TOL': 1e-6})
    def test_configured_value_wins(self):
        self.assertEqual(grcheck_settings('DEFAULT_TOL'), 1e-6)

    @override_settings(GRCHECK={})
    def test_missing_key_falls_back(self):
        self.assertEqual(grcheck_settings('WORKERS'), 1)

    def test_unknown_key(self):
        with self.assertRaises(KeyError):
            grcheck_settings('NOT_A_SETTING')


class ExceptionHierarchyTests(SimpleTestCase):

    def test_pointwise_errors_share_a_base(self):
        self.assertTrue(issubclass(EvalSingularity, PointwiseError))
        self.assertTrue(issubclass(SingularMetricError, PointwiseError))
        self.assertTrue(issubclass(PointwiseError, GRCheckError))
