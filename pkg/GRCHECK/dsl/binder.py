"""
Binds a parsed document: resolves names against the declarations above each
use, builds charts, fields, forms and algebras, and instantiates every check
as a catalog condition with its sample set.

All failures become diagnostics located at the offending node; binding goes
on with the next statement so one run reports every problem.
"""

import logging
import math
from pathlib import Path

from catalog.entries import build
from catalog.models import get_entry
from core.exceptions import DegreeError, DimensionError, DomainError, GRCheckError, UnknownName
from exterior.models import CONTRAVARIANT, COVARIANT, AlternatingTensor, Chart, MetricSpec
from fields.models import FUNCTIONS, Const, Coord, as_expr, constant_value, exponent_of, is_zero
from fields.sampling import SampleSet
from valued.models import TRIVIAL, LieStructure, ValuedForm, ValueSpace, validate_lie

from . import syntax
from .models import ERROR, BoundCheck, Diagnostic, SpecError, excerpt
from .parser import parse, parse_expression

logger = logging.getLogger(__name__)

CONSTANTS = {'pi': math.pi}


class BindError(Exception):
    def __init__(self, message, node):
        super().__init__(message)
        self.message = message
        self.node = node


class Binder:

    def __init__(self, source='', imaginary_unit=False):
        self.source = source
        self.imaginary_unit = imaginary_unit
        self.chart = None
        self.charts = {}
        self.fields = {}
        self.objects = {}
        self.checks = []
        self.diagnostics = []

    def report(self, message, node):
        line, column = getattr(node, 'line', 0), getattr(node, 'column', 0)
        self.diagnostics.append(Diagnostic(ERROR, message, line, column, excerpt(self.source, line)))

    def bind(self, document):
        for statement in document.statements:
            try:
                STATEMENT_BINDERS[type(statement)](self, statement)
            except BindError as exc:
                self.report(exc.message, exc.node)
            except GRCheckError as exc:
                self.report(str(exc), statement)
        if self.diagnostics:
            raise SpecError(self.diagnostics)
        return self.checks

    # Names

    def declare(self, name, value, node, table=None):
        if name in self.fields or name in self.objects or name in self.charts:
            raise BindError(f"'{name}' is already declared", node)
        if self.chart is not None and name in self.chart.coord_names:
            raise BindError(f"'{name}' is a coordinate of chart '{self.chart.name}'", node)
        (self.objects if table is None else table)[name] = value

    def coordinate(self, name, chart):
        if chart is not None and name in chart.coord_names:
            return Coord(chart.coord_names.index(name), name)
        return None

    # Expressions

    def expression(self, node, chart=None):
        chart = chart or self.chart
        if isinstance(node, syntax.Number):
            return as_expr(node.value)
        if isinstance(node, syntax.Name):
            return self.scalar_name(node, chart)
        if isinstance(node, syntax.Unary):
            operand = self.expression(node.operand, chart)
            return -operand if node.op == '-' else operand
        if isinstance(node, syntax.Binary):
            left = self.expression(node.left, chart)
            if node.op == '^':
                return left ** self.exponent(node.right, chart)
            right = self.expression(node.right, chart)
            if node.op == '+':
                return left + right
            if node.op == '-':
                return left - right
            if node.op == '*':
                return left * right
            return left / right
        if isinstance(node, syntax.Call):
            return FUNCTIONS[node.function](self.expression(node.argument, chart))
        raise BindError("expected a scalar expression", node)

    def exponent(self, node, chart):
        value = constant_value(self.expression(node, chart))
        if value is None:
            raise BindError("exponents must be constant", node)
        try:
            return exponent_of(value)
        except DomainError as exc:
            raise BindError(str(exc), node) from None

    def scalar_name(self, node, chart):
        name = node.name
        if name == 'i' and (self.imaginary_unit or (chart is not None and chart.is_complex)):
            return Const(1j)
        coordinate = self.coordinate(name, chart)
        if coordinate is not None:
            return coordinate
        if name in self.fields:
            return self.fields[name]
        if name in CONSTANTS:
            return Const(complex(CONSTANTS[name]))
        if name in self.objects or name in self.charts:
            raise BindError(f"'{name}' is not a scalar field", node)
        raise BindError(f"undeclared name '{name}'", node)

    def real_constant(self, node, chart=None):
        value = constant_value(self.expression(node, chart))
        if value is None or value.imag != 0:
            raise BindError("expected a real constant", node)
        return value.real

    def value(self, node):
        """A check argument: a declared object, a list, a string, a boolean or a scalar expression."""
        if isinstance(node, syntax.ListValue):
            return [self.value(item) for item in node.items]
        if isinstance(node, syntax.String):
            return node.value
        if isinstance(node, syntax.Bool):
            return node.value
        if isinstance(node, syntax.Name):
            if node.name in self.objects:
                return self.objects[node.name]
            if node.name in self.charts:
                return self.charts[node.name]
        return self.expression(node)

    # Statements

    def chart_statement(self, statement):
        for name in statement.coords:
            if name in self.fields or name in self.objects:
                raise BindError(f"coordinate '{name}' clashes with a declared name", statement)
        if statement.name in self.charts or statement.name in self.objects:
            raise BindError(f"'{statement.name}' is already declared", statement)
        if statement.metric_kind == 'diag':
            metric = MetricSpec.diagonal_constant([self.real_constant(e) for e in statement.metric])
        else:
            scope = Chart(statement.name, statement.coords, MetricSpec.euclidean(len(statement.coords)))
            metric = MetricSpec.from_rows([[self.expression(e, scope) for e in row] for row in statement.metric])
        chart = Chart(statement.name, statement.coords, metric, statement.is_complex)
        self.charts[statement.name] = chart
        self.chart = chart

    def field_statement(self, statement):
        self.declare(statement.name, self.expression(statement.expr), statement, self.fields)

    def form_statement(self, statement):
        chart = self.active_chart(statement)
        if not 0 <= statement.degree <= chart.dim:
            raise DegreeError(
                f"degree {statement.degree} is out of range for the {chart.dim}-dimensional chart '{chart.name}'"
            )
        space = TRIVIAL
        if statement.space is not None:
            space = self.objects.get(statement.space)
            if not isinstance(space, ValueSpace):
                raise BindError(f"undeclared value space '{statement.space}'", statement)
        variance = COVARIANT if statement.kind == 'form' else CONTRAVARIANT
        parts = {}
        for term in statement.terms:
            label, tensor = self.term(term, chart, statement.degree, space, variance)
            if tensor is not None:
                parts[label] = parts[label] + tensor if label in parts else tensor
        form = ValuedForm.build(chart.dim, statement.degree, space, parts, variance)
        self.declare(statement.name, form, statement)

    def term(self, term, chart, degree, space, variance):
        coefficient = as_expr(1) if term.coefficient is None else self.expression(term.coefficient)
        if not term.basis and is_zero(coefficient):
            return None, None
        if term.label is None:
            if space.dim != 1:
                raise BindError(f"terms with values in {space.name} need an @label", term)
            label = space.labels[0]
        elif term.label not in space.labels:
            raise BindError(f"'{term.label}' is not a basis label of {space.name}", term)
        else:
            label = term.label
        if not term.basis:
            if degree != 0:
                raise BindError(f"a term of a degree-{degree} {self.kind_name(variance)} needs basis forms", term)
        elif len(term.basis) != degree:
            raise BindError(f"term has degree {len(term.basis)}, declared degree is {degree}", term)
        if term.sign < 0:
            coefficient = -coefficient
        indices = [chart.coord_names.index(name) for name in term.basis]
        return label, AlternatingTensor.basis(chart.dim, indices, variance, coefficient)

    @staticmethod
    def kind_name(variance):
        return 'form' if variance == COVARIANT else 'multivector'

    def space_statement(self, statement):
        self.declare(statement.name, ValueSpace(statement.name, statement.labels), statement)

    def matrix_statement(self, statement):
        rows = tuple(tuple(self.expression(e) for e in row) for row in statement.rows)
        if len({len(row) for row in rows}) != 1:
            raise BindError(f"rows of matrix '{statement.name}' differ in length", statement)
        self.declare(statement.name, rows, statement)

    def algebra_statement(self, statement):
        brackets = []
        for i, j, k, coefficient in statement.brackets:
            value = self.real_constant(coefficient)
            brackets.append((i - 1, j - 1, k - 1, int(value) if value.is_integer() else value))
        structure = LieStructure.from_brackets(statement.dim, brackets)
        report = validate_lie(structure)
        if not report.ok:
            raise BindError(f"algebra '{statement.name}' is not a Lie algebra: {report}", statement)
        self.declare(statement.name, ValueSpace.numbered(statement.name, statement.dim, lie=structure), statement)

    def check_statement(self, statement):
        entry = get_entry(statement.entry)
        positional, named = [], {}
        for argument in statement.arguments:
            if argument.name is None:
                if named:
                    raise BindError("positional argument after a named one", argument)
                positional.append(self.value(argument.value))
            else:
                if argument.name not in entry.names:
                    raise UnknownName(
                        f"{entry.id} has no parameter '{argument.name}' (parameters: {entry.signature})"
                    )
                named[argument.name] = self.value(argument.value)
        arguments = entry.bind_positional(positional, named)
        name = statement.name or self.default_name(statement.entry)
        if any(check.name == name for check in self.checks):
            raise BindError(f"check '{name}' is already declared", statement)
        condition = build(statement.entry, self.chart, arguments, name)
        samples = self.samples(statement.sample, condition.chart)
        self.checks.append(BoundCheck(
            name, statement.entry, condition, samples, statement.tol, statement.expect, statement.line, arguments,
        ))
        logger.debug("Bound check %s (%s) on %d requested point(s)", name, statement.entry, samples.requested)

    def default_name(self, entry_id):
        taken = {check.name for check in self.checks}
        if entry_id not in taken:
            return entry_id
        suffix = 2
        while f"{entry_id}_{suffix}" in taken:
            suffix += 1
        return f"{entry_id}_{suffix}"

    def samples(self, sample, chart):
        if len(sample.ranges) != chart.dim:
            raise DimensionError(
                f"sample set has {len(sample.ranges)} range(s), chart '{chart.name}' has {chart.dim} coordinates"
            )
        bounds = [(self.real_constant(low), self.real_constant(high)) for low, high in sample.ranges]
        try:
            if sample.kind == 'grid':
                return SampleSet.grid(bounds, sample.count)
            return SampleSet.random(bounds, sample.count, sample.seed)
        except ValueError as exc:
            raise BindError(str(exc), sample) from None

    def active_chart(self, node):
        if self.chart is None:
            raise BindError("no chart declared", node)
        return self.chart


STATEMENT_BINDERS = {
    syntax.ChartDecl: Binder.chart_statement,
    syntax.FieldDecl: Binder.field_statement,
    syntax.FormDecl: Binder.form_statement,
    syntax.SpaceDecl: Binder.space_statement,
    syntax.MatrixDecl: Binder.matrix_statement,
    syntax.AlgebraDecl: Binder.algebra_statement,
    syntax.CheckDecl: Binder.check_statement,
}


def bind_document(document, source=''):
    """Bound checks of a parsed document, in source order; raises SpecError."""
    return Binder(source).bind(document)


def load_text(source):
    return bind_document(parse(source), source)


def load_file(path):
    """Parse and bind a .grs file. OSError propagates to the caller."""
    source = Path(path).read_text(encoding='utf-8')
    try:
        return load_text(source)
    except SpecError as exc:
        exc.path = str(path)
        raise


def evaluate_expression(text, at=None):
    """
    Value of one scalar expression with the names in `at` bound as
    coordinates; 'i' is the imaginary unit. Raises SpecError.
    """
    at = dict(at or {})
    binder = Binder(text, imaginary_unit=True)
    chart = Chart('eval', tuple(at), MetricSpec.euclidean(len(at))) if at else None
    node = parse_expression(text)
    try:
        expr = binder.expression(node, chart)
    except BindError as exc:
        binder.report(exc.message, exc.node)
        raise SpecError(binder.diagnostics) from None
    return complex(expr.evaluate(tuple(float(value) for value in at.values())))
