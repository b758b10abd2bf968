"""
Scalar field expressions over the coordinates of a chart.

An expression is an immutable tree of nodes. Trees are never rewritten or
compared structurally; every claim about them is checked numerically by
evaluating at sample points (see fields.evaluation).
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Number

from core.exceptions import DomainError


@dataclass(frozen=True, eq=False)
class ScalarExpr:
    """Base node. Arithmetic operators build new trees."""

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, exponent):
        return Pow(self, exponent_of(exponent))

    @cached_property
    def evaluator(self):
        from .evaluation import compile_expr
        return compile_expr(self)

    def evaluate(self, point):
        """Evaluate at a point given as a sequence of coordinate values."""
        return self.evaluator(tuple(float(v) for v in point))

    def diff(self, axis):
        from .calculus import differentiate
        return differentiate(self, axis)


@dataclass(frozen=True, eq=False)
class Const(ScalarExpr):
    value: complex

    def __repr__(self):
        return f"Const({self.value!r})"


@dataclass(frozen=True, eq=False)
class Coord(ScalarExpr):
    index: int
    name: str = ''

    def __repr__(self):
        return self.name or f"x{self.index}"


@dataclass(frozen=True, eq=False)
class Binary(ScalarExpr):
    left: ScalarExpr
    right: ScalarExpr
    symbol = '?'

    def __repr__(self):
        return f"({self.left!r} {self.symbol} {self.right!r})"


class Add(Binary):
    symbol = '+'


class Sub(Binary):
    symbol = '-'


class Mul(Binary):
    symbol = '*'


class Div(Binary):
    symbol = '/'


@dataclass(frozen=True, eq=False)
class Neg(ScalarExpr):
    operand: ScalarExpr

    def __repr__(self):
        return f"-({self.operand!r})"


@dataclass(frozen=True, eq=False)
class Pow(ScalarExpr):
    base: ScalarExpr
    exponent: Fraction

    def __repr__(self):
        return f"({self.base!r})^({self.exponent})"


@dataclass(frozen=True, eq=False)
class Function(ScalarExpr):
    argument: ScalarExpr
    function_name = '?'

    def __repr__(self):
        return f"{self.function_name}({self.argument!r})"


class Sin(Function):
    function_name = 'sin'


class Cos(Function):
    function_name = 'cos'


class Exp(Function):
    function_name = 'exp'


class Sqrt(Function):
    function_name = 'sqrt'


@dataclass(frozen=True, eq=False)
class Bump(ScalarExpr):
    """
    The order-th derivative of s -> exp(-1/(1-s^2)), evaluated at the
    argument. Zero outside the open interval (-1, 1).
    """
    argument: ScalarExpr
    order: int = field(default=0)

    def __repr__(self):
        if self.order:
            return f"bump^({self.order})({self.argument!r})"
        return f"bump({self.argument!r})"


ZERO = Const(0j)
ONE = Const(1 + 0j)


def as_expr(value):
    if isinstance(value, ScalarExpr):
        return value
    if isinstance(value, Number):
        return Const(complex(value))
    raise TypeError(f"Cannot use {type(value).__name__} as a scalar expression")


def exponent_of(value):
    """Exponents are integers or halves of integers."""
    if isinstance(value, Const):
        value = value.value
    if isinstance(value, complex):
        if value.imag != 0:
            raise DomainError(f"Complex exponent {value} is not supported")
        value = value.real
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"Exponent {value} is not finite")
        exponent = Fraction(value).limit_denominator(2)
        if float(exponent) != value:
            raise DomainError(f"Exponent {value} is neither an integer nor a half-integer")
        return exponent
    if isinstance(value, (int, Fraction)):
        exponent = Fraction(value)
        if exponent.denominator not in (1, 2):
            raise DomainError(f"Exponent {value} is neither an integer nor a half-integer")
        return exponent
    raise DomainError(f"Exponent must be a constant number, got {type(value).__name__}")


def is_zero(value):
    """True for a literal zero: a number equal to 0 or a Const node holding 0."""
    if isinstance(value, Const):
        return value.value == 0
    if isinstance(value, ScalarExpr):
        return False
    return value == 0


def is_one(value):
    if isinstance(value, Const):
        return value.value == 1
    if isinstance(value, ScalarExpr):
        return False
    return value == 1


def constant_value(value):
    """The numeric value of a constant tree, or None when it depends on coordinates."""
    if isinstance(value, Number):
        return complex(value)
    if isinstance(value, Const):
        return value.value
    if isinstance(value, Coord):
        return None
    if isinstance(value, Binary):
        left, right = constant_value(value.left), constant_value(value.right)
        if left is None or right is None:
            return None
        return value.evaluate(())
    if isinstance(value, (Neg,)):
        return None if constant_value(value.operand) is None else value.evaluate(())
    if isinstance(value, Pow):
        return None if constant_value(value.base) is None else value.evaluate(())
    if isinstance(value, (Function, Bump)):
        return None if constant_value(value.argument) is None else value.evaluate(())
    return None


def sin(e):
    return Sin(as_expr(e))


def cos(e):
    return Cos(as_expr(e))


def exp(e):
    return Exp(as_expr(e))


def sqrt(e):
    return Sqrt(as_expr(e))


def bump(e):
    return Bump(as_expr(e))


FUNCTIONS = {
    'sin': sin,
    'cos': cos,
    'exp': exp,
    'sqrt': sqrt,
    'bump': bump,
}
