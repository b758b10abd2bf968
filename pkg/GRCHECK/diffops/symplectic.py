"""
Helpers for 2-forms on phase space: the nondegeneracy guard, i(X) omega and
the Poisson function omega^-1(alpha, beta) with its gradient.
"""

import numpy as np

from core.conf import grcheck_settings
from core.exceptions import DegenerateFormError, DegreeError
from exterior.algebra import interior
from fields.calculus import differentiate
from fields.models import as_expr, constant_value
from valued.models import TRIVIAL

from .models import PointwiseFunction, vector_tensor


def _trivial_part(form, degree):
    if form.degree != degree or not form.space.matches(TRIVIAL):
        raise DegreeError(f"Expected a plain {degree}-form")
    return form.part(TRIVIAL.labels[0])


def component_matrix(two_form):
    """Omega[mu, nu] = omega_{mu nu} as scalar expressions, antisymmetric."""
    n = two_form.dim
    matrix = [[as_expr(0)] * n for _ in range(n)]
    for (mu, nu), value in two_form.components.items():
        matrix[mu][nu] = as_expr(value)
        matrix[nu][mu] = -as_expr(value)
    return matrix


def _evaluate(matrix, point):
    return np.array([[entry.evaluator(point) for entry in row] for row in matrix])


class SymplecticForm:
    """A 2-form together with pointwise access to its inverse."""

    def __init__(self, omega):
        self.tensor = _trivial_part(omega, 2)
        self.dim = omega.dim
        if self.dim % 2:
            raise DegenerateFormError(f"A 2-form on an odd ({self.dim}) dimensional chart is degenerate")
        self.matrix = component_matrix(self.tensor)
        self.threshold = grcheck_settings('DEGENERACY_THRESHOLD')
        self.derivatives = [[[differentiate(entry, k) for entry in row] for row in self.matrix] for k in range(self.dim)]
        if self.is_constant:
            self.check(tuple(0.0 for _ in range(self.dim)))

    @property
    def is_constant(self):
        return all(constant_value(entry) is not None for row in self.matrix for entry in row)

    def check(self, point):
        matrix = _evaluate(self.matrix, point)
        det = np.linalg.det(matrix)
        if abs(det) < self.threshold:
            raise DegenerateFormError(f"omega is degenerate at {point} (|det| = {abs(det):.3g})")
        return matrix

    def inverse_at(self, point):
        return np.linalg.inv(self.check(point))

    def nondegenerate_unit(self):
        """The constant function 1, guarded by the nondegeneracy check at every point."""
        def value(point):
            self.check(point)
            return 1.0

        return PointwiseFunction(self.dim, value, lambda point: np.zeros(self.dim))


def interior_field(x, omega):
    """i(X) omega for a vector field X given by components."""
    return omega.map_parts(lambda part: interior(vector_tensor(x), part), omega.degree - 1)


class PoissonFunction(PointwiseFunction):
    """
    W(alpha, beta) = alpha_mu W^{mu nu} beta_nu with W the inverse of the
    component matrix of omega. Its gradient uses d_k W = -W (d_k Omega) W.
    """

    def __init__(self, omega, alpha, beta):
        form = SymplecticForm(omega)
        a = _trivial_part(alpha, 1)
        b = _trivial_part(beta, 1)
        n = form.dim
        alpha_ = [as_expr(a.get((mu,))) for mu in range(n)]
        beta_ = [as_expr(b.get((mu,))) for mu in range(n)]
        d_alpha = [[differentiate(c, k) for c in alpha_] for k in range(n)]
        d_beta = [[differentiate(c, k) for c in beta_] for k in range(n)]

        def vec(values, point):
            return np.array([value.evaluator(point) for value in values])

        def value(point):
            return vec(alpha_, point) @ form.inverse_at(point) @ vec(beta_, point)

        def gradient(point):
            w = form.inverse_at(point)
            av, bv = vec(alpha_, point), vec(beta_, point)
            out = np.empty(n, dtype=complex)
            for k in range(n):
                dw = -w @ _evaluate(form.derivatives[k], point) @ w
                out[k] = vec(d_alpha[k], point) @ w @ bv + av @ dw @ bv + av @ w @ vec(d_beta[k], point)
            return out

        super().__init__(n, value, gradient)
        object.__setattr__(self, 'symplectic', form)
