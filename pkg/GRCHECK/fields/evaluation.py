import cmath
import math
from fractions import Fraction
from functools import singledispatch

from core.conf import grcheck_settings
from core.exceptions import DomainError, EvalSingularity

from .bump import bump_value
from .models import Add, Bump, Const, Coord, Cos, Div, Exp, Mul, Neg, Pow, Sin, Sqrt, Sub

HALF = Fraction(1, 2)


@singledispatch
def compile_expr(expr):
    """Turn an expression tree into a closure point -> complex."""
    raise NotImplementedError(f"Cannot compile a {type(expr).__name__}")


@compile_expr.register(Const)
def _(expr):
    value = complex(expr.value)
    return lambda point: value


@compile_expr.register(Coord)
def _(expr):
    index = expr.index
    return lambda point: complex(point[index])


@compile_expr.register(Add)
def _(expr):
    left, right = compile_expr(expr.left), compile_expr(expr.right)
    return lambda point: left(point) + right(point)


@compile_expr.register(Sub)
def _(expr):
    left, right = compile_expr(expr.left), compile_expr(expr.right)
    return lambda point: left(point) - right(point)


@compile_expr.register(Mul)
def _(expr):
    left, right = compile_expr(expr.left), compile_expr(expr.right)
    return lambda point: left(point) * right(point)


@compile_expr.register(Div)
def _(expr):
    left, right = compile_expr(expr.left), compile_expr(expr.right)
    tiny = grcheck_settings('SINGULAR_DIVISOR')

    def divide(point):
        denominator = right(point)
        if abs(denominator) < tiny:
            raise EvalSingularity(f"Division by {denominator!r} at {point}")
        return left(point) / denominator
    return divide


@compile_expr.register(Neg)
def _(expr):
    operand = compile_expr(expr.operand)
    return lambda point: -operand(point)


def _power(base, exponent, point, tiny):
    if exponent < 0 and abs(base) < tiny:
        raise EvalSingularity(f"Negative power of {base!r} at {point}")
    if exponent.denominator == 1:
        return base ** exponent.numerator
    if base.imag == 0:
        if base.real < 0:
            raise DomainError(f"Half-integer power of negative base {base.real!r} at {point}")
        return complex(base.real ** float(exponent))
    return cmath.exp(float(exponent) * cmath.log(base))


@compile_expr.register(Pow)
def _(expr):
    base = compile_expr(expr.base)
    exponent = expr.exponent
    tiny = grcheck_settings('SINGULAR_DIVISOR')
    return lambda point: _power(base(point), exponent, point, tiny)


@compile_expr.register(Sqrt)
def _(expr):
    argument = compile_expr(expr.argument)
    tiny = grcheck_settings('SINGULAR_DIVISOR')
    return lambda point: _power(argument(point), HALF, point, tiny)


def _unary(function):
    def build(expr):
        argument = compile_expr(expr.argument)

        def apply(point):
            try:
                return function(argument(point))
            except OverflowError as exc:
                raise EvalSingularity(f"Overflow in {expr.function_name} at {point}") from exc
        return apply
    return build


compile_expr.register(Sin)(_unary(cmath.sin))
compile_expr.register(Cos)(_unary(cmath.cos))
compile_expr.register(Exp)(_unary(cmath.exp))


@compile_expr.register(Bump)
def _(expr):
    argument = compile_expr(expr.argument)
    order = expr.order

    def apply(point):
        s = argument(point)
        if s.imag != 0:
            raise DomainError(f"bump needs a real argument, got {s!r} at {point}")
        return complex(bump_value(s.real, order))
    return apply


def is_finite(value):
    return math.isfinite(value.real) and math.isfinite(value.imag)
