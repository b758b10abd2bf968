"""
Parameter kinds and the coercion of resolved DSL values into the objects the
entry builders expect.
"""

from numbers import Number

import numpy as np

from core.exceptions import ParameterError
from diffops.models import vector_components
from exterior.models import CONTRAVARIANT, COVARIANT, AlternatingTensor, Chart
from fields.models import ScalarExpr, as_expr, constant_value
from valued.models import ValuedForm, ValueSpace

SCALAR = 'scalar'
NUMBER = 'number'
FORM = 'form'
VECTOR = 'vector'
MULTIVECTOR = 'multivector'
FORMS = 'forms'
VECTORS = 'vectors'
SCALARS = 'scalars'
MATRIX = 'matrix'
CONNECTION = 'connection'
CHART = 'chart'
STRING = 'string'
BOOL = 'bool'

KINDS = (SCALAR, NUMBER, FORM, VECTOR, MULTIVECTOR, FORMS, VECTORS, SCALARS, MATRIX, CONNECTION, CHART, STRING, BOOL)

FLAT = 'flat'
LEVI_CIVITA = 'levi_civita'


def show(value):
    if value is None:
        return 'none'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, str):
        return f"'{value}'"
    return repr(value)


def _fail(parameter, value, expected):
    raise ParameterError(f"Parameter '{parameter.name}' expects {expected}, got {describe(value)}")


def describe(value):
    if isinstance(value, ValuedForm):
        kind = 'form' if value.variance == COVARIANT else 'multivector'
        return f"a degree-{value.degree} {kind} with values in {value.space.name}"
    if isinstance(value, ScalarExpr):
        return 'a scalar expression'
    if isinstance(value, Chart):
        return f"chart '{value.name}'"
    if isinstance(value, ValueSpace):
        return f"value space '{value.name}'"
    if isinstance(value, (list, tuple)):
        return f"a list of {len(value)}"
    return type(value).__name__


def _scalar(parameter, value):
    if isinstance(value, (ScalarExpr, Number)) and not isinstance(value, bool):
        return as_expr(value)
    if isinstance(value, ValuedForm) and value.degree == 0 and value.space.dim == 1:
        return as_expr(value.scalar(value.space.labels[0]))
    _fail(parameter, value, 'a scalar field')


def _number(parameter, value):
    if isinstance(value, bool):
        _fail(parameter, value, 'a real number')
    constant = constant_value(value) if isinstance(value, (ScalarExpr, Number)) else None
    if constant is None or constant.imag != 0:
        _fail(parameter, value, 'a real constant')
    return constant.real


def _form(parameter, value, chart):
    if isinstance(value, (ScalarExpr, Number)) and not isinstance(value, bool):
        return ValuedForm.from_tensor(AlternatingTensor.scalar(chart.dim, as_expr(value)))
    if isinstance(value, ValuedForm) and value.variance == COVARIANT:
        return value
    _fail(parameter, value, 'a form')


def _multivector(parameter, value):
    if isinstance(value, ValuedForm) and value.variance == CONTRAVARIANT:
        return value
    _fail(parameter, value, 'a multivector')


def _vector(parameter, value, chart):
    try:
        if isinstance(value, (list, tuple)):
            return vector_components([_scalar(parameter, item) for item in value], chart.dim)
        if isinstance(value, ValuedForm):
            return vector_components(value, chart.dim)
    except ParameterError:
        raise
    except Exception as exc:
        raise ParameterError(f"Parameter '{parameter.name}': {exc}") from exc
    _fail(parameter, value, 'a vector field')


def _list(parameter, value, item):
    if not isinstance(value, (list, tuple)):
        _fail(parameter, value, 'a list')
    return tuple(item(entry) for entry in value)


def _matrix(parameter, value):
    if not isinstance(value, (list, tuple)) or not value or not all(isinstance(row, (list, tuple)) for row in value):
        _fail(parameter, value, 'a matrix')
    rows = tuple(tuple(_scalar(parameter, entry) for entry in row) for row in value)
    if len({len(row) for row in rows}) != 1:
        raise ParameterError(f"Parameter '{parameter.name}' has rows of different lengths")
    return rows


def _connection(parameter, value):
    if value in (FLAT, LEVI_CIVITA):
        return value
    if isinstance(value, (list, tuple)):
        return tuple(_matrix(parameter, matrix) for matrix in value)
    _fail(parameter, value, f"'{FLAT}', '{LEVI_CIVITA}' or a list of connection matrices")


def coerce(parameter, value, chart):
    kind = parameter.kind
    if value is None and not parameter.required and parameter.default is None:
        return None
    if kind in (FORM, VECTOR, FORMS, VECTORS) and chart is None:
        raise ParameterError(f"Parameter '{parameter.name}' needs an active chart")
    if kind == SCALAR:
        return _scalar(parameter, value)
    if kind == NUMBER:
        return _number(parameter, value)
    if kind == FORM:
        return _form(parameter, value, chart)
    if kind == VECTOR:
        return _vector(parameter, value, chart)
    if kind == MULTIVECTOR:
        return _multivector(parameter, value)
    if kind == FORMS:
        return _list(parameter, value, lambda item: _form(parameter, item, chart))
    if kind == VECTORS:
        return _list(parameter, value, lambda item: _vector(parameter, item, chart))
    if kind == SCALARS:
        return _list(parameter, value, lambda item: _scalar(parameter, item))
    if kind == MATRIX:
        return _matrix(parameter, value)
    if kind == CONNECTION:
        return _connection(parameter, value)
    if kind == CHART:
        if isinstance(value, Chart):
            return value
        _fail(parameter, value, 'a chart')
    if kind == STRING:
        if isinstance(value, str):
            return value
        _fail(parameter, value, 'a string')
    if kind == BOOL:
        if isinstance(value, bool):
            return value
        _fail(parameter, value, 'true or false')
    raise ParameterError(f"Unknown parameter kind '{kind}'")


def numeric_matrix(parameter_name, rows):
    """A matrix of constant expressions as a numpy array (real when possible)."""
    values = []
    for row in rows:
        constants = [constant_value(entry) for entry in row]
        if any(value is None for value in constants):
            raise ParameterError(f"Parameter '{parameter_name}' must be a constant matrix")
        values.append(constants)
    array = np.array(values, dtype=complex)
    return array.real if not array.imag.any() else array
