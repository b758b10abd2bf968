"""
Exact partial derivatives of expression trees, plus a finite-difference
oracle used to cross-check them.

Derivative terms that are literal zeros are dropped and unit factors are not
multiplied in; no other rewriting happens.
"""

from fractions import Fraction
from functools import singledispatch

from .models import (
    ONE, ZERO, Add, Bump, Const, Coord, Cos, Div, Exp, Mul, Neg, Pow, Sin, Sqrt, Sub, is_one,
    is_zero,
)


def add(a, b):
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    return Add(a, b)


def sub(a, b):
    if is_zero(b):
        return a
    if is_zero(a):
        return Neg(b)
    return Sub(a, b)


def mul(a, b):
    if is_zero(a) or is_zero(b):
        return ZERO
    if is_one(a):
        return b
    if is_one(b):
        return a
    return Mul(a, b)


def neg(a):
    return ZERO if is_zero(a) else Neg(a)


@singledispatch
def differentiate(expr, axis):
    raise NotImplementedError(f"Cannot differentiate a {type(expr).__name__}")


@differentiate.register(Const)
def _(expr, axis):
    return ZERO


@differentiate.register(Coord)
def _(expr, axis):
    return ONE if expr.index == axis else ZERO


@differentiate.register(Add)
def _(expr, axis):
    return add(differentiate(expr.left, axis), differentiate(expr.right, axis))


@differentiate.register(Sub)
def _(expr, axis):
    return sub(differentiate(expr.left, axis), differentiate(expr.right, axis))


@differentiate.register(Mul)
def _(expr, axis):
    left, right = expr.left, expr.right
    return add(
        mul(differentiate(left, axis), right),
        mul(left, differentiate(right, axis)),
    )


@differentiate.register(Div)
def _(expr, axis):
    numerator, denominator = expr.left, expr.right
    d_numerator = differentiate(numerator, axis)
    d_denominator = differentiate(denominator, axis)
    first = ZERO if is_zero(d_numerator) else Div(d_numerator, denominator)
    if is_zero(d_denominator):
        return first
    second = Div(mul(numerator, d_denominator), Pow(denominator, Fraction(2)))
    return sub(first, second)


@differentiate.register(Neg)
def _(expr, axis):
    return neg(differentiate(expr.operand, axis))


@differentiate.register(Pow)
def _(expr, axis):
    d_base = differentiate(expr.base, axis)
    if is_zero(d_base) or expr.exponent == 0:
        return ZERO
    exponent = expr.exponent
    if exponent == 1:
        return d_base
    outer = Pow(expr.base, exponent - 1) if exponent != 2 else expr.base
    return mul(mul(Const(complex(exponent)), outer), d_base)


@differentiate.register(Sin)
def _(expr, axis):
    return mul(Cos(expr.argument), differentiate(expr.argument, axis))


@differentiate.register(Cos)
def _(expr, axis):
    d_argument = differentiate(expr.argument, axis)
    return neg(mul(Sin(expr.argument), d_argument))


@differentiate.register(Exp)
def _(expr, axis):
    return mul(expr, differentiate(expr.argument, axis))


@differentiate.register(Sqrt)
def _(expr, axis):
    d_argument = differentiate(expr.argument, axis)
    if is_zero(d_argument):
        return ZERO
    return Div(d_argument, Mul(Const(2 + 0j), expr))


@differentiate.register(Bump)
def _(expr, axis):
    return mul(Bump(expr.argument, expr.order + 1), differentiate(expr.argument, axis))


def gradient(expr, dim):
    return [differentiate(expr, axis) for axis in range(dim)]


def fd_diff(expr, axis, point, h=1e-3):
    """Fourth-order central difference of expr along axis at point."""
    if h <= 0:
        raise ValueError("Step h must be positive")
    base = [float(v) for v in point]

    def shifted(offset):
        moved = list(base)
        moved[axis] += offset
        return expr.evaluate(moved)

    return (-shifted(2 * h) + 8 * shifted(h) - 8 * shifted(-h) + shifted(-2 * h)) / (12 * h)
