from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from core.exceptions import DegreeError, DimensionError, SingularMetricError
from fields.calculus import differentiate
from fields.models import Coord, ScalarExpr, as_expr, constant_value, is_zero

COVARIANT = 'covariant'
CONTRAVARIANT = 'contravariant'

MAX_DIM = 8


@dataclass(frozen=True, eq=False)
class MetricSpec:
    """
    A metric on an n-dimensional chart.

    Either a constant diagonal (nonzero reals) or a symmetric matrix of
    expressions of which only the upper triangle is stored.
    """
    dim: int
    diagonal: tuple = None
    upper: tuple = None

    def __post_init__(self):
        if (self.diagonal is None) == (self.upper is None):
            raise DimensionError("A metric is either diagonal-constant or an expression matrix")
        if self.diagonal is not None:
            if len(self.diagonal) != self.dim:
                raise DimensionError(f"Diagonal metric has {len(self.diagonal)} entries for dimension {self.dim}")
            if any(value == 0 for value in self.diagonal):
                raise SingularMetricError("Diagonal metric entries must be nonzero")

    @classmethod
    def diagonal_constant(cls, values):
        return cls(len(values), diagonal=tuple(float(v) for v in values))

    @classmethod
    def from_rows(cls, rows):
        """Symmetric metric from a square matrix; entries below the diagonal are ignored."""
        dim = len(rows)
        if any(len(row) != dim for row in rows):
            raise DimensionError("Metric matrix must be square")
        upper = tuple(tuple(as_expr(rows[i][j]) for j in range(i, dim)) for i in range(dim))
        return cls(dim, upper=upper)

    @classmethod
    def minkowski(cls):
        """Signature (-,-,-,+) in coordinates (x, y, z, xi)."""
        return cls.diagonal_constant((-1.0, -1.0, -1.0, 1.0))

    @classmethod
    def euclidean(cls, dim):
        return cls.diagonal_constant((1.0,) * dim)

    def entry(self, i, j):
        if self.diagonal is not None:
            return as_expr(self.diagonal[i] if i == j else 0)
        i, j = min(i, j), max(i, j)
        return self.upper[i][j - i]

    @cached_property
    def constant_matrix(self):
        """The metric as an array when it does not depend on the point, else None."""
        if self.diagonal is not None:
            return np.diag(self.diagonal)
        matrix = np.zeros((self.dim, self.dim))
        for i in range(self.dim):
            for j in range(i, self.dim):
                value = constant_value(self.entry(i, j))
                if value is None:
                    return None
                matrix[i, j] = matrix[j, i] = value.real
        return matrix

    @property
    def is_constant(self):
        return self.constant_matrix is not None

    def matrix_at(self, point):
        if self.constant_matrix is not None:
            return self.constant_matrix
        point = tuple(float(v) for v in point)
        matrix = np.empty((self.dim, self.dim))
        for i in range(self.dim):
            for j in range(i, self.dim):
                matrix[i, j] = matrix[j, i] = self.entry(i, j).evaluator(point).real
        return matrix

    def inverse_at(self, point):
        return invert_metric(self.matrix_at(point))

    @cached_property
    def _first_derivatives(self):
        return [
            (k, i, j, differentiate(self.entry(i, j), k))
            for k in range(self.dim)
            for i in range(self.dim)
            for j in range(i, self.dim)
        ]

    @cached_property
    def _second_derivatives(self):
        return [
            (k, l, i, j, differentiate(first, l))
            for k, i, j, first in self._first_derivatives
            for l in range(k, self.dim)
        ]

    def first_derivatives_at(self, point):
        """dg[k, i, j] = d_k g_ij."""
        dg = np.zeros((self.dim,) * 3)
        if self.is_constant:
            return dg
        point = tuple(float(v) for v in point)
        for k, i, j, expr in self._first_derivatives:
            if not is_zero(expr):
                dg[k, i, j] = dg[k, j, i] = expr.evaluator(point).real
        return dg

    def second_derivatives_at(self, point):
        """ddg[k, l, i, j] = d_k d_l g_ij."""
        ddg = np.zeros((self.dim,) * 4)
        if self.is_constant:
            return ddg
        point = tuple(float(v) for v in point)
        for k, l, i, j, expr in self._second_derivatives:
            if not is_zero(expr):
                value = expr.evaluator(point).real
                ddg[k, l, i, j] = ddg[k, l, j, i] = value
                ddg[l, k, i, j] = ddg[l, k, j, i] = value
        return ddg


def invert_metric(matrix):
    det = np.linalg.det(matrix)
    if not np.isfinite(det) or abs(det) == 0.0:
        raise SingularMetricError(f"Metric is singular (det={det})")
    try:
        return np.linalg.inv(matrix)
    except np.linalg.LinAlgError as exc:
        raise SingularMetricError(str(exc)) from exc


@dataclass(frozen=True, eq=False)
class Chart:
    name: str
    coord_names: tuple
    metric: MetricSpec
    is_complex: bool = False

    def __post_init__(self):
        names = tuple(self.coord_names)
        if not 1 <= len(names) <= MAX_DIM:
            raise DimensionError(f"Charts have between 1 and {MAX_DIM} coordinates, got {len(names)}")
        if len(set(names)) != len(names):
            raise DimensionError(f"Coordinate names must be unique: {names}")
        if self.metric.dim != len(names):
            raise DimensionError(f"Metric of dimension {self.metric.dim} on a {len(names)}-dimensional chart")
        object.__setattr__(self, 'coord_names', names)

    @property
    def dim(self):
        return len(self.coord_names)

    @cached_property
    def coords(self):
        return tuple(Coord(i, name) for i, name in enumerate(self.coord_names))

    def index(self, name):
        try:
            return self.coord_names.index(name)
        except ValueError:
            raise DimensionError(f"Chart '{self.name}' has no coordinate '{name}'") from None

    def basis_label(self, key, variance=COVARIANT):
        if not key:
            return '1'
        prefix = 'd' if variance == COVARIANT else '∂'
        return '∧'.join(prefix + self.coord_names[i] for i in key)


@dataclass(frozen=True)
class AlternatingTensor:
    """
    A p-form (covariant) or p-vector (contravariant) on an n-dimensional chart,
    stored sparsely: strictly increasing index tuple -> coefficient. Absent
    keys are zero. Coefficients may be numbers or scalar expressions.
    """
    dim: int
    degree: int
    components: dict = field(default_factory=dict)
    variance: str = COVARIANT

    def __post_init__(self):
        if not 0 <= self.degree <= self.dim:
            raise DegreeError(f"Degree {self.degree} out of range for dimension {self.dim}")
        if self.variance not in (COVARIANT, CONTRAVARIANT):
            raise ValueError(f"Unknown variance '{self.variance}'")
        for key in self.components:
            if len(key) != self.degree:
                raise DegreeError(f"Component {key} does not have degree {self.degree}")
            if any(a >= b for a, b in zip(key, key[1:])) or any(not 0 <= i < self.dim for i in key):
                raise DimensionError(f"Component key {key} is not strictly increasing in [0, {self.dim})")

    @classmethod
    def build(cls, dim, degree, components, variance=COVARIANT):
        """Like the constructor, but drops literal zero components."""
        kept = {key: value for key, value in components.items() if not is_zero(value)}
        return cls(dim, degree, kept, variance)

    @classmethod
    def zero(cls, dim, degree, variance=COVARIANT):
        return cls(dim, degree, {}, variance)

    @classmethod
    def scalar(cls, dim, value):
        return cls.build(dim, 0, {(): value})

    @classmethod
    def basis(cls, dim, indices, variance=COVARIANT, coefficient=1):
        """The basis element for indices in any order, with the permutation sign."""
        sign, key = sort_with_sign(indices)
        if sign == 0:
            return cls.zero(dim, len(indices), variance)
        return cls.build(dim, len(key), {key: coefficient if sign > 0 else -coefficient}, variance)

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.components)
        for key, value in other.components.items():
            out[key] = out[key] + value if key in out else value
        return AlternatingTensor.build(self.dim, self.degree, out, self.variance)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlternatingTensor(self.dim, self.degree, {k: -v for k, v in self.components.items()}, self.variance)

    def scale(self, factor):
        if is_zero(factor):
            return AlternatingTensor.zero(self.dim, self.degree, self.variance)
        return AlternatingTensor.build(
            self.dim, self.degree, {k: v * factor for k, v in self.components.items()}, self.variance,
        )

    def map(self, function):
        """Apply function to every coefficient, dropping resulting zeros."""
        return AlternatingTensor.build(
            self.dim, self.degree, {k: function(v) for k, v in self.components.items()}, self.variance,
        )

    def evaluate(self, point):
        return self.map(lambda value: value.evaluator(point) if isinstance(value, ScalarExpr) else complex(value))

    def get(self, key):
        return self.components.get(tuple(key), 0)

    def max_abs(self):
        return max((abs(v) for v in self.components.values()), default=0.0)

    def is_zero(self):
        return not self.components

    def _check_compatible(self, other):
        if (self.dim, self.degree, self.variance) != (other.dim, other.degree, other.variance):
            raise DegreeError(
                f"Cannot combine degree-{self.degree} {self.variance} and "
                f"degree-{other.degree} {other.variance} tensors"
            )


def sort_with_sign(indices):
    """(sign, sorted tuple) of a sequence of indices; sign is 0 on repeats."""
    indices = list(indices)
    if len(set(indices)) != len(indices):
        return 0, tuple(sorted(indices))
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(indices)):
        j = i
        while j > 0 and indices[j - 1] > indices[j]:
            indices[j - 1], indices[j] = indices[j], indices[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(indices)


def multi_indices(dim, degree):
    return list(combinations(range(dim), degree))
