"""
Recursive-descent parser for .grs documents with precedence climbing for
scalar expressions.

Basis tokens are 'd' + a coordinate name of the most recently declared chart.
A '*' directly followed by a basis token ends a coefficient, so
`x*dy ^w dz` reads as x (dy ^ dz).
"""

import logging

from fields.models import FUNCTIONS

from . import syntax
from .lexer import STATEMENT_KEYWORDS, tokenize
from .models import ERROR, Diagnostic, SpecError, excerpt

logger = logging.getLogger(__name__)

# op -> (precedence, right associative)
BINARY_OPERATORS = {
    '+': (10, False),
    '-': (10, False),
    '*': (20, False),
    '/': (20, False),
    '^': (40, True),
}
UNARY_PRECEDENCE = 30
MULTIPLICATIVE = 20

EXPRESSION_STARTS = ('NUMBER', 'IDENT', '(', '-', '+')


class ParseError(Exception):
    def __init__(self, message, token):
        super().__init__(message)
        self.message = message
        self.token = token


class Parser:

    def __init__(self, source):
        self.source = source
        self.tokens, self.diagnostics = tokenize(source)
        self.position = 0
        self.coords = ()

    # Token access

    @property
    def current(self):
        return self.tokens[self.position]

    def peek(self, offset=1):
        index = min(self.position + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self):
        token = self.current
        if token.kind != 'EOF':
            self.position += 1
        return token

    def at(self, kind, value=None):
        token = self.current
        return token.kind == kind and (value is None or token.value == value)

    def at_keyword(self, *words):
        return self.current.kind == 'KEYWORD' and self.current.value in words

    def accept(self, kind, value=None):
        if self.at(kind, value):
            return self.advance()
        return None

    def expect(self, kind, value=None, what=None):
        if self.at(kind, value):
            return self.advance()
        what = what or (f"'{value}'" if value else f"'{kind}'" if len(kind) == 1 else kind.lower())
        raise ParseError(f"expected {what}, found {self.current}", self.current)

    def expect_keyword(self, word):
        return self.expect('KEYWORD', word, f"'{word}'")

    def expect_ident(self, what='a name'):
        return self.expect('IDENT', what=what).value

    def expect_integer(self, what='an integer'):
        token = self.expect('NUMBER', what=what)
        if not isinstance(token.value, int):
            raise ParseError(f"expected {what}, found {token}", token)
        return token.value

    def is_basis(self, token):
        return token.kind == 'IDENT' and token.value.startswith('d') and token.value[1:] in self.coords

    # Document

    def parse(self):
        statements = []
        while not self.at('EOF'):
            start = self.position
            try:
                statements.append(self.statement())
            except ParseError as exc:
                self.report(exc.message, exc.token)
                self.synchronize(start)
        if self.diagnostics:
            raise SpecError(self.diagnostics)
        return syntax.SpecDocument(tuple(statements))

    def report(self, message, token):
        self.diagnostics.append(
            Diagnostic(ERROR, message, token.line, token.column, excerpt(self.source, token.line))
        )

    def synchronize(self, start):
        """Skip to the next statement keyword that begins a line."""
        if self.position == start:
            self.advance()
        while not self.at('EOF'):
            token = self.current
            if token.kind == 'KEYWORD' and token.value in STATEMENT_KEYWORDS and token.first_on_line:
                return
            self.advance()

    def statement(self):
        token = self.current
        if token.kind != 'KEYWORD' or token.value not in STATEMENT_KEYWORDS:
            raise ParseError(f"expected a statement, found {token}", token)
        return getattr(self, f"{token.value}_statement")()

    # Statements

    def chart_statement(self):
        start = self.expect_keyword('chart')
        name = self.expect_ident('a chart name')
        self.expect('(')
        coords = [self.expect_ident('a coordinate name')]
        while self.accept(','):
            coords.append(self.expect_ident('a coordinate name'))
        self.expect(')')
        is_complex = bool(self.accept('KEYWORD', 'complex'))
        self.expect_keyword('metric')
        if self.accept('KEYWORD', 'diag'):
            self.expect('(')
            values = self.expression_list(')')
            self.expect(')')
            kind, metric = 'diag', tuple(values)
        elif self.accept('KEYWORD', 'matrix'):
            kind, metric = 'matrix', self.matrix_rows()
        else:
            raise ParseError(f"expected 'diag' or 'matrix', found {self.current}", self.current)
        self.coords = tuple(coords)
        return syntax.ChartDecl(name, tuple(coords), is_complex, kind, metric, start.line, start.column)

    def field_statement(self):
        start = self.expect_keyword('field')
        name = self.expect_ident('a field name')
        self.expect('=')
        return syntax.FieldDecl(name, self.expression(), start.line, start.column)

    def form_statement(self):
        return self.valued_statement('form')

    def vector_statement(self):
        return self.valued_statement('vector')

    def valued_statement(self, kind):
        start = self.expect_keyword(kind)
        name = self.expect_ident(f"a {kind} name")
        self.expect(':')
        degree = self.expect_integer('a degree')
        space = None
        if self.accept('KEYWORD', 'values'):
            space = self.expect_ident('a value space')
        self.expect('=')
        terms = [self.term(1)]
        while self.at('+') or self.at('-'):
            sign = 1 if self.advance().value == '+' else -1
            terms.append(self.term(sign))
        return syntax.FormDecl(kind, name, degree, space, tuple(terms), start.line, start.column)

    def term(self, sign):
        if sign == 1 and self.at('-') and self.is_basis(self.peek()):
            self.advance()
            sign = -1
        start = self.current
        coefficient, basis = None, ()
        if self.is_basis(start):
            basis = self.basis_product()
        else:
            if not self.current.kind in EXPRESSION_STARTS:
                raise ParseError(f"expected a term, found {self.current}", self.current)
            coefficient = self.expression(MULTIPLICATIVE)
            if self.at('*') and self.is_basis(self.peek()):
                self.advance()
                basis = self.basis_product()
        label = None
        if self.accept('@'):
            label = self.expect_ident('a value label')
        return syntax.Term(sign, coefficient, basis, label, start.line, start.column)

    def basis_product(self):
        names = [self.advance().value[1:]]
        while self.accept('WEDGE'):
            token = self.current
            if not self.is_basis(token):
                raise ParseError(f"expected a basis form after '^w', found {token}", token)
            names.append(self.advance().value[1:])
        return tuple(names)

    def space_statement(self):
        start = self.expect_keyword('space')
        name = self.expect_ident('a space name')
        self.expect('(')
        labels = [self.expect_ident('a basis label')]
        while self.accept(','):
            labels.append(self.expect_ident('a basis label'))
        self.expect(')')
        return syntax.SpaceDecl(name, tuple(labels), start.line, start.column)

    def matrix_statement(self):
        start = self.expect_keyword('matrix')
        name = self.expect_ident('a matrix name')
        self.expect('=')
        return syntax.MatrixDecl(name, self.matrix_rows(), start.line, start.column)

    def matrix_rows(self):
        self.expect('[')
        rows = [self.matrix_row()]
        while self.accept(','):
            rows.append(self.matrix_row())
        self.expect(']')
        return tuple(rows)

    def matrix_row(self):
        self.expect('[')
        row = self.expression_list(']')
        self.expect(']')
        return tuple(row)

    def algebra_statement(self):
        start = self.expect_keyword('algebra')
        name = self.expect_ident('an algebra name')
        self.expect_keyword('dim')
        dim = self.expect_integer('a dimension')
        brackets = []
        if self.accept('KEYWORD', 'bracket'):
            while self.at('('):
                brackets.append(self.bracket_entry())
            if not brackets:
                raise ParseError(f"expected '(' after 'bracket', found {self.current}", self.current)
        return syntax.AlgebraDecl(name, dim, tuple(brackets), start.line, start.column)

    def bracket_entry(self):
        self.expect('(')
        indices = [self.expect_integer('a basis index')]
        for _ in range(2):
            self.expect(',')
            indices.append(self.expect_integer('a basis index'))
        coefficient = syntax.Number(1)
        if self.accept(','):
            coefficient = self.expression()
        self.expect(')')
        return tuple(indices) + (coefficient,)

    def check_statement(self):
        start = self.expect_keyword('check')
        first = self.expect_ident('a catalog entry')
        name = None
        if self.accept(':'):
            name, entry = first, self.expect_ident('a catalog entry')
        else:
            entry = first
        self.expect('(')
        arguments = []
        if not self.at(')'):
            arguments.append(self.argument())
            while self.accept(','):
                arguments.append(self.argument())
        self.expect(')')
        self.expect_keyword('on')
        sample = self.sample()
        tol = expect = None
        if self.accept('KEYWORD', 'tol'):
            tol = float(self.expect('NUMBER', what='a tolerance').value)
        if self.accept('KEYWORD', 'expect'):
            token = self.expect('IDENT', what="'pass' or 'fail'")
            if token.value not in ('pass', 'fail'):
                raise ParseError(f"expected 'pass' or 'fail', found {token}", token)
            expect = token.value
        return syntax.CheckDecl(name, entry, tuple(arguments), sample, tol, expect, start.line, start.column)

    def argument(self):
        token = self.current
        if token.kind in ('IDENT', 'KEYWORD') and self.peek().kind == '=':
            self.advance()
            self.advance()
            return syntax.Argument(token.value, self.value(), token.line, token.column)
        return syntax.Argument(None, self.value(), token.line, token.column)

    def value(self):
        token = self.current
        if self.accept('['):
            items = []
            if not self.at(']'):
                items.append(self.value())
                while self.accept(','):
                    items.append(self.value())
            self.expect(']')
            return syntax.ListValue(tuple(items), token.line, token.column)
        if self.accept('STRING'):
            return syntax.String(token.value, token.line, token.column)
        if self.at_keyword('true', 'false'):
            self.advance()
            return syntax.Bool(token.value == 'true', token.line, token.column)
        return self.expression()

    def sample(self):
        token = self.current
        if not self.at_keyword('grid', 'random'):
            raise ParseError(f"expected 'grid' or 'random', found {token}", token)
        kind = self.advance().value
        self.expect('(')
        ranges = [self.range()]
        while self.accept(','):
            ranges.append(self.range())
        self.expect(';')
        count = self.expect_integer('a point count')
        seed = None
        if kind == 'random':
            self.expect(',')
            self.expect_keyword('seed')
            seed = self.expect_integer('a seed')
        self.expect(')')
        return syntax.Sample(kind, tuple(ranges), count, seed, token.line, token.column)

    def range(self):
        low = self.expression()
        self.expect('RANGE', what="'..'")
        return low, self.expression()

    def expression_list(self, closing):
        values = []
        if not self.at(closing):
            values.append(self.expression())
            while self.accept(','):
                values.append(self.expression())
        return values

    # Expressions

    def expression(self, min_precedence=0):
        left = self.prefix()
        while True:
            token = self.current
            if token.kind not in BINARY_OPERATORS:
                return left
            precedence, right_associative = BINARY_OPERATORS[token.kind]
            if precedence < min_precedence:
                return left
            if token.kind == '*' and self.is_basis(self.peek()):
                return left
            self.advance()
            if self.current.kind not in EXPRESSION_STARTS:
                raise ParseError(f"expected expression after '{token.value}'", token)
            right = self.expression(precedence if right_associative else precedence + 1)
            left = syntax.Binary(token.kind, left, right, token.line, token.column)

    def prefix(self):
        token = self.current
        if token.kind in ('-', '+'):
            self.advance()
            if self.current.kind not in EXPRESSION_STARTS:
                raise ParseError(f"expected expression after '{token.value}'", token)
            operand = self.expression(UNARY_PRECEDENCE)
            return syntax.Unary(token.kind, operand, token.line, token.column)
        if token.kind == 'NUMBER':
            self.advance()
            return syntax.Number(token.value, token.line, token.column)
        if token.kind == '(':
            self.advance()
            inner = self.expression()
            self.expect(')')
            return inner
        if token.kind == 'IDENT':
            self.advance()
            if self.at('('):
                if token.value not in FUNCTIONS:
                    raise ParseError(f"unknown function '{token.value}'", token)
                self.advance()
                argument = self.expression()
                self.expect(')')
                return syntax.Call(token.value, argument, token.line, token.column)
            return syntax.Name(token.value, token.line, token.column)
        raise ParseError(f"expected expression, found {token}", token)


def parse(text):
    """Parse a document; raises SpecError carrying every diagnostic."""
    document = Parser(text).parse()
    logger.debug("Parsed %d statement(s)", len(document.statements))
    return document


def parse_expression(text):
    """A single scalar expression, e.g. for the eval command."""
    parser = Parser(text)
    if parser.diagnostics:
        raise SpecError(parser.diagnostics)
    try:
        node = parser.expression()
        if not parser.at('EOF'):
            raise ParseError(f"unexpected {parser.current} after expression", parser.current)
    except ParseError as exc:
        parser.report(exc.message, exc.token)
        raise SpecError(parser.diagnostics) from None
    return node
