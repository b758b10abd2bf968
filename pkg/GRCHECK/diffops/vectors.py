import logging

import numpy as np

from core.conf import grcheck_settings
from core.exceptions import DimensionError, NonIdempotentProjection
from fields.calculus import add, differentiate, mul, sub
from fields.models import ZERO, as_expr
from valued.models import PointwiseForm, ValuedForm, ValueSpace

from .models import vector_components

logger = logging.getLogger(__name__)


def directional(x, expr):
    """X(f) = X^nu d_nu f."""
    total = ZERO
    for nu, component in enumerate(x):
        total = add(total, mul(component, differentiate(expr, nu)))
    return total


def lie_bracket(x, y):
    """[X, Y]^mu = X^nu d_nu Y^mu - Y^nu d_nu X^mu."""
    x, y = vector_components(x), vector_components(y)
    if len(x) != len(y):
        raise DimensionError(f"Vector fields with {len(x)} and {len(y)} components")
    return tuple(sub(directional(x, y_mu), directional(y, x_mu)) for x_mu, y_mu in zip(x, y))


def nabla_X(connection, chart, x, u):
    """
    (nabla_X u)^mu = X^nu d_nu u^mu + Gamma^mu_{nu sigma} X^nu u^sigma, as a
    tangent-valued function. Symbolic when the connection vanishes.
    """
    x, u = vector_components(x, chart.dim), vector_components(u, chart.dim)
    space = ValueSpace.tangent(chart)
    flat = tuple(directional(x, u_mu) for u_mu in u)
    flat_form = ValuedForm.from_scalars(chart.dim, space, dict(zip(space.labels, flat)))
    if connection is None or connection.is_zero:
        return flat_form

    def evaluate(point):
        gamma = connection.at(point)
        xs = np.array([c.evaluator(point) for c in x])
        us = np.array([c.evaluator(point) for c in u])
        twist = np.einsum('mns,n,s->m', gamma, xs, us)
        base = flat_form.at(point)
        values = {label: base.scalar(label) + twist[mu] for mu, label in enumerate(space.labels)}
        return ValuedForm.from_scalars(chart.dim, space, values)

    return PointwiseForm(chart.dim, 0, space, evaluate)


class ProjectedLie:
    """
    Y -> pi([X, Y]) for a pointwise projection pi given as an n x n matrix of
    scalar expressions, pi[mu][nu] acting on components Y^nu.
    """

    def __init__(self, chart, projection, x):
        self.chart = chart
        n = chart.dim
        self.projection = tuple(tuple(as_expr(value) for value in row) for row in projection)
        if len(self.projection) != n or any(len(row) != n for row in self.projection):
            raise DimensionError(f"Projection must be {n} x {n}")
        self.x = vector_components(x, n)
        self.tolerance = grcheck_settings('IDEMPOTENCE_TOL')

    def matrix_at(self, point):
        return np.array([[entry.evaluator(point) for entry in row] for row in self.projection])

    def check_idempotent(self, point):
        pi = self.matrix_at(point)
        defect = np.abs(pi @ pi - pi).max()
        if defect > self.tolerance:
            raise NonIdempotentProjection(f"pi^2 differs from pi by {defect:.3g} at {point}")
        return pi

    def symbolic(self, y):
        bracket = lie_bracket(self.x, y)
        return tuple(
            _row_product(row, bracket) for row in self.projection
        )

    def __call__(self, y):
        space = ValueSpace.tangent(self.chart)
        projected = self.symbolic(vector_components(y, self.chart.dim))
        exact = ValuedForm.from_scalars(self.chart.dim, space, dict(zip(space.labels, projected)))

        def evaluate(point):
            self.check_idempotent(point)
            return exact.at(point)

        return PointwiseForm(self.chart.dim, 0, space, evaluate)


def _row_product(row, vector):
    total = ZERO
    for entry, component in zip(row, vector):
        total = add(total, mul(entry, component))
    return total


def projected_lie(chart, projection, x):
    return ProjectedLie(chart, projection, x)
