"""
Exterior and covariant exterior derivatives of valued forms.
"""

from fractions import Fraction

from core.exceptions import DegreeError, DimensionError, VarianceError
from exterior.algebra import wedge
from exterior.models import COVARIANT, AlternatingTensor, sort_with_sign
from fields.calculus import add, differentiate, neg
from fields.models import as_expr, is_zero
from valued.models import PointwiseForm, ValuedForm
from valued.pairings import PAIRINGS, lift_pointwise
from valued.phi import LieBracket

from .models import LieConnection, PointwiseFunction


def d_tensor(tensor):
    """d of a single form with scalar-expression (or constant) coefficients."""
    if tensor.variance != COVARIANT:
        raise VarianceError("The exterior derivative acts on forms")
    if tensor.degree >= tensor.dim:
        raise DegreeError(f"d of a {tensor.degree}-form on a {tensor.dim}-chart")
    out = {}
    for key, coefficient in tensor.components.items():
        expr = as_expr(coefficient)
        for axis in range(tensor.dim):
            if axis in key:
                continue
            derivative = differentiate(expr, axis)
            if is_zero(derivative):
                continue
            sign, target = sort_with_sign((axis,) + key)
            term = derivative if sign > 0 else neg(derivative)
            out[target] = add(out[target], term) if target in out else term
    return AlternatingTensor.build(tensor.dim, tensor.degree + 1, out)


def exterior_d(form):
    """d(psi^i (x) E_i) = d psi^i (x) E_i."""
    if isinstance(form, PointwiseFunction):
        return _d_pointwise_function(form)
    if form.degree >= form.dim:
        raise DegreeError(f"d of a {form.degree}-form on a {form.dim}-chart")
    if form.variance != COVARIANT:
        raise VarianceError("The exterior derivative acts on forms")
    return form.map_parts(d_tensor, form.degree + 1, COVARIANT)


def _d_pointwise_function(function):
    def evaluate(point):
        gradient = function.gradient(point)
        tensor = AlternatingTensor.build(function.dim, 1, {(mu,): value for mu, value in enumerate(gradient)})
        return ValuedForm.from_tensor(tensor, function.space)
    return PointwiseForm(function.dim, 1, function.space, evaluate)


def covariant_D(connection, form):
    """
    D psi for a connection on the value bundle of psi:

    - None: the trivial connection, D = d;
    - LieConnection: D psi = d psi + omega^j ^ psi^k C^m_jk (x) E_m;
    - a bundle connection with `.at(point)` giving Gamma^i_{mu j}:
      (D psi)^i = d psi^i + (-1)^p psi^j ^ Gamma^i_{mu j} dx^mu, evaluated pointwise.
    """
    d_form = exterior_d(form)
    if connection is None:
        return d_form
    if not connection.space.matches(form.space):
        raise DimensionError(
            f"Connection on {connection.space.name} cannot act on values in {form.space.name}"
        )
    if isinstance(connection, LieConnection):
        twist = lift_pointwise(PAIRINGS['wedge'], LieBracket(connection.space), connection.omega, form)
        return d_form + twist
    if connection.is_zero:
        return d_form
    return _bundle_D(connection, form, d_form)


def _bundle_D(connection, form, d_form):
    dim, p = form.dim, form.degree
    sign = (-1) ** p
    labels = form.space.labels

    def evaluate(point):
        gamma = connection.at(point)
        psi = form.at(point)
        parts = dict(d_form.at(point).parts)
        for j, source in enumerate(labels):
            part = psi.parts.get(source)
            if part is None:
                continue
            for i, target in enumerate(labels):
                one_form = AlternatingTensor.build(dim, 1, {(mu,): gamma[i, mu, j] for mu in range(dim)})
                if one_form.is_zero():
                    continue
                term = wedge(part, one_form).scale(sign)
                parts[target] = parts[target] + term if target in parts else term
        return ValuedForm.build(dim, p + 1, form.space, parts)

    return PointwiseForm(dim, p + 1, form.space, evaluate)


def curvature(connection):
    """Omega = d omega + 1/2 [omega, omega]."""
    omega = connection.omega
    bracket = lift_pointwise(PAIRINGS['wedge'], LieBracket(connection.space), omega, omega)
    return exterior_d(omega) + bracket.scale(Fraction(1, 2))
