"""
Pointwise alternating algebra: wedge, interior product, Hodge star, the
musical isomorphism and the induced metric on p-forms.

Functions work on coefficients of any ring-like type (complex numbers,
fractions, scalar expressions). Metric arguments are numeric arrays, already
evaluated at the point of interest.
"""

import math

import numpy as np

from core.exceptions import DegreeError, DimensionError, VarianceError
from fields.models import is_zero

from .models import CONTRAVARIANT, COVARIANT, AlternatingTensor, invert_metric, multi_indices, sort_with_sign


def _accumulate(out, key, term):
    out[key] = out[key] + term if key in out else term


def _times(value, factor):
    """value * factor for a python number factor, skipping trivial factors."""
    if factor == 1:
        return value
    if factor == -1:
        return -value
    return value * factor


def _check_dims(a, b):
    if a.dim != b.dim:
        raise DimensionError(f"Tensors live on charts of dimension {a.dim} and {b.dim}")


def wedge(a, b):
    _check_dims(a, b)
    if a.variance != b.variance:
        raise VarianceError("Cannot wedge a form with a multivector")
    degree = a.degree + b.degree
    if degree > a.dim:
        raise DegreeError(f"Wedge of degrees {a.degree} and {b.degree} exceeds dimension {a.dim}")
    out = {}
    for left_key, left in a.components.items():
        for right_key, right in b.components.items():
            sign, key = sort_with_sign(left_key + right_key)
            if sign == 0:
                continue
            _accumulate(out, key, _times(left * right, sign))
    return AlternatingTensor.build(a.dim, degree, out, a.variance)


def wedge_all(tensors):
    tensors = list(tensors)
    result = tensors[0]
    for tensor in tensors[1:]:
        result = wedge(result, tensor)
    return result


def _contract_basis(vector_key, form_key):
    """
    i(d_k1 ^ ... ^ d_kq) dx^I for basis elements, applied as i(d_kq) o ... o i(d_k1).
    Returns (sign, remaining key) or None when the result vanishes.
    """
    remaining = list(form_key)
    sign = 1
    for k in vector_key:
        try:
            position = remaining.index(k)
        except ValueError:
            return None
        if position % 2:
            sign = -sign
        del remaining[position]
    return sign, tuple(remaining)


def interior(v, w):
    """Substitute the multivector v into the leading slots of the form w."""
    _check_dims(v, w)
    if v.variance != CONTRAVARIANT and v.degree > 0:
        raise VarianceError("Interior product needs a multivector as first argument")
    if w.variance != COVARIANT:
        raise VarianceError("Interior product needs a form as second argument")
    if v.degree > w.degree:
        raise DegreeError(f"Cannot substitute a {v.degree}-vector into a {w.degree}-form")
    out = {}
    for vector_key, coefficient in v.components.items():
        for form_key, value in w.components.items():
            contracted = _contract_basis(vector_key, form_key)
            if contracted is None:
                continue
            sign, key = contracted
            _accumulate(out, key, _times(coefficient * value, sign))
    return AlternatingTensor.build(w.dim, w.degree - v.degree, out, COVARIANT)


def _minor(matrix, rows, cols):
    if not rows:
        return 1.0
    if len(rows) == 1:
        return float(matrix[rows[0], cols[0]])
    if len(rows) == 2:
        (a, b), (c, d) = rows, cols
        return float(matrix[a, c] * matrix[b, d] - matrix[a, d] * matrix[b, c])
    return float(np.linalg.det(matrix[np.ix_(rows, cols)]))


def _transform(w, matrix, variance):
    """Apply det[matrix_{JI}] to every component: index raising or lowering."""
    out = {}
    keys = multi_indices(w.dim, w.degree)
    for source_key, value in w.components.items():
        for target_key in keys:
            factor = _minor(matrix, target_key, source_key)
            if factor != 0.0:
                _accumulate(out, target_key, _times(value, factor))
    return AlternatingTensor.build(w.dim, w.degree, out, variance)


def musical_tilde(w, g):
    """Raise all indices of a form with g^-1, or lower those of a multivector with g."""
    if w.variance == COVARIANT:
        return _transform(w, invert_metric(g), CONTRAVARIANT)
    return _transform(w, np.asarray(g, dtype=float), COVARIANT)


def induced_inner(a, b, g):
    """<a, b> for p-forms with the determinant pairing det[g^{i_a j_b}] (no 1/p!)."""
    _check_dims(a, b)
    if a.degree != b.degree or a.variance != COVARIANT or b.variance != COVARIANT:
        raise DegreeError("The induced inner product pairs forms of equal degree")
    inverse = invert_metric(g)
    total = 0
    for left_key, left in a.components.items():
        for right_key, right in b.components.items():
            factor = _minor(inverse, left_key, right_key)
            if factor != 0.0:
                total = total + _times(left * right, factor)
    return total


def metric_pairing(a, b, g):
    """g^{mu nu} a_mu b_nu for two 1-forms."""
    if a.degree != 1 or b.degree != 1:
        raise DegreeError("Metric pairing is defined on 1-forms")
    return induced_inner(a, b, g)


def complement(key, dim):
    return tuple(i for i in range(dim) if i not in key)


def volume_form(g):
    """sqrt|det g| dx^1 ^ ... ^ dx^n in declared coordinate order."""
    dim = len(g)
    return AlternatingTensor.build(dim, dim, {tuple(range(dim)): math.sqrt(abs(np.linalg.det(g)))})


def hodge(w, g):
    """
    The Hodge star defined by a ^ *b = <a, b> vol on basis forms: the
    coefficient of *b on dx^{I^c} is eps(I, I^c) <dx^I, b> sqrt|det g|.
    """
    if w.variance != COVARIANT:
        raise VarianceError("The Hodge star acts on forms")
    g = np.asarray(g, dtype=float)
    inverse = invert_metric(g)
    scale = math.sqrt(abs(np.linalg.det(g)))
    dim, degree = w.dim, w.degree
    out = {}
    for key in multi_indices(dim, degree):
        rest = complement(key, dim)
        sign, _ = sort_with_sign(key + rest)
        for source_key, value in w.components.items():
            factor = _minor(inverse, key, source_key)
            if factor != 0.0:
                _accumulate(out, rest, _times(value, sign * factor * scale))
    return AlternatingTensor.build(dim, dim - degree, out, COVARIANT)


def scalar_part(w):
    """The coefficient of a degree-0 tensor."""
    if w.degree != 0:
        raise DegreeError("Only degree-0 tensors have a scalar value")
    value = w.components.get((), 0)
    return 0 if is_zero(value) else value
