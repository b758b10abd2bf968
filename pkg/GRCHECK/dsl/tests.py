from pathlib import Path

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from catalog.fixtures import spec_path
from catalog.models import catalog_list
from core.conf import grcheck_settings
from fields.models import Bump, Mul

from . import syntax
from .binder import Binder, load_file, load_text
from .lexer import tokenize
from .models import SpecError
from .parser import parse, parse_expression
from .printer import print_document, print_expression

TESTDATA = Path(__file__).resolve().parent / 'testdata'

MINKOWSKI = "chart minkowski(x, y, z, xi) metric diag(-1, -1, -1, 1)\n"

SOLITON = MINKOWSKI + """
field f = exp(-(x^2 + y^2))*bump(2/sqrt(3)*(z - 0.5*xi))
vector u: 1 = 0.5*f*dz + f*dxi
check autoparallel_vector(u) on random(-2..2,-2..2,-2..2,-2..2; 1000, seed 7) tol 1e-9
"""


def evaluate(text):
    return Binder().expression(parse_expression(text)).evaluate(())


def diagnostics(source):
    try:
        load_text(source)
    except SpecError as exc:
        return exc.diagnostics
    raise AssertionError("expected diagnostics")


class LexerTests(SimpleTestCase):

    def test_wedge_and_power_are_distinct(self):
        tokens, errors = tokenize("dx ^w dy + x^2 + x^wz")
        kinds = [token.kind for token in tokens]
        self.assertEqual(errors, [])
        self.assertEqual(kinds[:3], ['IDENT', 'WEDGE', 'IDENT'])
        self.assertEqual(kinds.count('WEDGE'), 1)
        self.assertEqual((tokens[-3].kind, tokens[-2].value), ('^', 'wz'))

    def test_range_after_integer(self):
        tokens, _ = tokenize("0..2.5")
        self.assertEqual([(t.kind, t.value) for t in tokens[:3]], [('NUMBER', 0), ('RANGE', '..'), ('NUMBER', 2.5)])

    def test_unexpected_character(self):
        _, errors = tokenize("field f = 1 $ 2")
        self.assertEqual((errors[0].line, errors[0].column), (1, 12))
        self.assertIn("'$'", errors[0].message)


class ExpressionParserTests(SimpleTestCase):

    def test_precedence(self):
        self.assertEqual(evaluate("2+3*4^2"), 50)
        self.assertEqual(evaluate("2^3^2"), 512)
        self.assertEqual(evaluate("(2+3)*4"), 20)

    def test_unary_minus_binds_looser_than_power(self):
        expected = syntax.Unary('-', syntax.Binary('^', syntax.Name('x'), syntax.Number(2)))
        self.assertEqual(parse_expression("-x^2"), expected)
        self.assertEqual(evaluate("-3^2"), -9)

    def test_trailing_operator(self):
        with self.assertRaises(SpecError) as caught:
            parse("field f = 2 +")
        (diagnostic,) = caught.exception.diagnostics
        self.assertEqual(diagnostic.message, "expected expression after '+'")
        self.assertEqual((diagnostic.line, diagnostic.column), (1, 12))

    def test_unknown_function(self):
        with self.assertRaises(SpecError) as caught:
            parse_expression("tan(x)")
        self.assertIn("unknown function 'tan'", caught.exception.diagnostics[0].message)

    def test_bump_node(self):
        binder = Binder()
        binder.bind(parse(MINKOWSKI + "field f = exp(-(x^2+y^2))*bump(z-0.5*xi)\n"))
        f = binder.fields['f']
        self.assertIsInstance(f, Mul)
        self.assertIsInstance(f.right, Bump)


class DocumentParserTests(SimpleTestCase):

    def test_check_statement(self):
        document = parse(SOLITON)
        (check,) = document.checks
        self.assertEqual(check.entry, 'autoparallel_vector')
        self.assertEqual(check.sample.kind, 'random')
        self.assertEqual((check.sample.count, check.sample.seed, check.tol), (1000, 7, 1e-9))
        self.assertEqual(len(check.sample.ranges), 4)

    def test_coefficient_stops_before_basis(self):
        document = parse(MINKOWSKI + "form w: 2 = x*y*dz ^w dxi - dx ^w dy\n")
        form = document.statements[1]
        first, second = form.terms
        self.assertEqual(first.basis, ('z', 'xi'))
        self.assertEqual(first.coefficient, syntax.Binary('*', syntax.Name('x'), syntax.Name('y')))
        self.assertEqual((second.sign, second.coefficient, second.basis), (-1, None, ('x', 'y')))

    def test_named_check_with_keyword_argument(self):
        document = parse(MINKOWSKI + "check flat: ricci_flat(metric=minkowski) on grid(0..1, 0..1, 0..1, 0..1; 2) expect fail\n")
        (check,) = document.checks
        self.assertEqual((check.name, check.expect), ('flat', 'fail'))
        self.assertEqual(check.arguments[0].name, 'metric')

    def test_recovers_at_statement_boundaries(self):
        with self.assertRaises(SpecError) as caught:
            parse((TESTDATA / 'malformed.grs').read_text())
        errors = caught.exception.diagnostics
        self.assertEqual(len(errors), 2)
        self.assertEqual((errors[0].line, errors[0].column), (2, 12))
        self.assertEqual(errors[1].line, 4)
        self.assertIn("'^w'", errors[1].message)

    def test_diagnostic_format(self):
        with self.assertRaises(SpecError) as caught:
            parse("field f = 2 +")
        text = caught.exception.diagnostics[0].format('bad.grs')
        self.assertTrue(text.startswith("bad.grs:1:12: error: expected expression after '+'"))
        self.assertTrue(text.endswith(' ' * 16 + '^'))


names = st.sampled_from(['x', 'y', 'u'])
numbers = st.one_of(st.integers(0, 100), st.floats(0, 1e6, allow_nan=False, allow_infinity=False))
atoms = st.one_of(numbers.map(syntax.Number), names.map(syntax.Name))
expressions = st.recursive(
    atoms,
    lambda children: st.one_of(
        st.tuples(st.sampled_from('+-*/^'), children, children).map(lambda t: syntax.Binary(*t)),
        st.tuples(st.sampled_from('-+'), children).map(lambda t: syntax.Unary(*t)),
        st.tuples(st.sampled_from(['sin', 'exp', 'bump']), children).map(lambda t: syntax.Call(*t)),
    ),
    max_leaves=12,
)


class PrinterTests(SimpleTestCase):

    @settings(derandomize=True, max_examples=100, deadline=None)
    @given(expressions)
    def test_expression_round_trip(self, tree):
        self.assertEqual(parse_expression(print_expression(tree)), tree)

    def test_shipped_specs_round_trip(self):
        paths = sorted(Path(grcheck_settings('SPEC_DIR')).glob('*.grs'))
        self.assertGreaterEqual(len(paths), len(catalog_list()))
        for path in paths:
            with self.subTest(path=path.name):
                document = parse(path.read_text(encoding='utf-8'))
                self.assertEqual(parse(print_document(document)), document)


class BinderTests(SimpleTestCase):

    def test_soliton_document(self):
        (check,) = load_text(SOLITON)
        self.assertEqual((check.name, check.entry, check.tol), ('autoparallel_vector', 'autoparallel_vector', 1e-9))
        self.assertEqual(check.samples.requested, 1000)
        self.assertEqual(check.condition.chart.coord_names, ('x', 'y', 'z', 'xi'))

    def test_undeclared_name(self):
        source = MINKOWSKI + "check autoparallel_vector(v) on random(-1..1,-1..1,-1..1,-1..1; 5, seed 1)\n"
        (error,) = diagnostics(source)
        self.assertIn("'v'", error.message)
        self.assertEqual((error.line, error.column), (2, 26))

    def test_degree_out_of_range(self):
        (error,) = diagnostics(MINKOWSKI + "form w: 5 = 0\n")
        self.assertIn("degree 5", error.message)
        self.assertEqual(error.line, 2)

    def test_term_degree_mismatch(self):
        (error,) = diagnostics(MINKOWSKI + "form w: 2 = x*dy\n")
        self.assertIn("declared degree is 2", error.message)

    def test_unknown_entry(self):
        (error,) = diagnostics(MINKOWSKI + "check no_such_entry(1) on grid(0..1, 0..1, 0..1, 0..1; 2)\n")
        self.assertIn("no_such_entry", error.message)

    def test_unknown_parameter(self):
        source = MINKOWSKI + "vector u: 1 = dxi\ncheck autoparallel_vector(w=u) on grid(0..1, 0..1, 0..1, 0..1; 2)\n"
        (error,) = diagnostics(source)
        self.assertIn("no parameter 'w'", error.message)

    def test_too_many_arguments(self):
        source = MINKOWSKI + "vector u: 1 = dxi\ncheck autoparallel_vector(u, u) on grid(0..1, 0..1, 0..1, 0..1; 2)\n"
        (error,) = diagnostics(source)
        self.assertIn("takes 1 argument", error.message)

    def test_sample_dimension_must_match_chart(self):
        source = MINKOWSKI + "vector u: 1 = dxi\ncheck autoparallel_vector(u) on grid(0..1, 0..1; 2)\n"
        (error,) = diagnostics(source)
        self.assertIn("4 coordinates", error.message)

    def test_reports_every_bad_statement(self):
        source = MINKOWSKI + "field a = q\nfield b = r\n"
        self.assertEqual([error.line for error in diagnostics(source)], [2, 3])

    def test_labels_needed_for_multidimensional_values(self):
        (error,) = diagnostics(MINKOWSKI + "space V(e1, e2)\nform w: 1 values V = dx\n")
        self.assertIn("@label", error.message)

    def test_algebra_must_satisfy_jacobi(self):
        (error,) = diagnostics("algebra bad dim 3 bracket (1, 2, 1) (1, 3, 2)\n")
        self.assertIn("jacobi", error.message)

    def test_algebra_labels(self):
        binder = Binder()
        binder.bind(parse("algebra su2 dim 3 bracket (1, 2, 3) (2, 3, 1) (3, 1, 2)\n"))
        space = binder.objects['su2']
        self.assertEqual(space.labels, ('e1', 'e2', 'e3'))
        self.assertEqual(space.lie.constants[1, 0, 2], -1)

    def test_imaginary_unit_needs_complex_chart(self):
        binder = Binder()
        binder.bind(parse("chart line(x, t) complex metric diag(1, 1)\nfield w = exp(i*t)\n"))
        self.assertAlmostEqual(binder.fields['w'].evaluate((0.0, 1.0)), complex(0.5403023058681398, 0.8414709848078965))
        (error,) = diagnostics("chart line(x, t) metric diag(1, 1)\nfield w = exp(i*t)\n")
        self.assertIn("'i'", error.message)

    def test_constant_ranges(self):
        source = "chart plane(x, y) metric diag(1, 1)\nvector r: 1 = -y*dx + x*dy\n" \
                 "check first_integral(r, x^2 + y^2) on grid(0..pi, -1..1; 3)\n"
        (check,) = load_text(source)
        self.assertAlmostEqual(check.samples.bounds[0][1], 3.141592653589793)

    def test_duplicate_names(self):
        (error,) = diagnostics(MINKOWSKI + "field f = x\nfield f = y\n")
        self.assertIn("already declared", error.message)

    def test_every_entry_is_constructible(self):
        for entry in catalog_list():
            with self.subTest(entry=entry.id):
                checks = load_file(spec_path(entry.id))
                self.assertTrue(any(check.entry == entry.id for check in checks))

    def test_load_file_records_path(self):
        with self.assertRaises(SpecError) as caught:
            load_file(TESTDATA / 'malformed.grs')
        self.assertTrue(caught.exception.format().startswith(str(TESTDATA / 'malformed.grs')))
