"""
Forms and multivectors with values in a finite-dimensional vector space.

A ValuedForm stores one AlternatingTensor per basis label of its value
space, so psi^i (x) E_i is `parts[E_i] = psi^i`. The same container holds
symbolic components (scalar expressions) and evaluated ones (complex
numbers); `at(point)` turns the former into the latter.
"""

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import product
from numbers import Rational

import numpy as np

from core.exceptions import DegreeError, DimensionError
from exterior.models import COVARIANT, AlternatingTensor

REAL = 'real'
COMPLEX = 'complex'

EXACT_TYPES = (int, Fraction, Rational)
LIE_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class LieStructure:
    """Structure constants with constants[i, j, k] = C^k_ij, i.e. [E_i, E_j] = C^k_ij E_k."""
    constants: np.ndarray

    def __post_init__(self):
        constants = np.asarray(self.constants, dtype=object)
        if constants.ndim != 3 or len(set(constants.shape)) != 1:
            raise DimensionError(f"Structure constants must be r x r x r, got shape {constants.shape}")
        object.__setattr__(self, 'constants', constants)

    @classmethod
    def from_brackets(cls, dim, brackets):
        """
        Build from (i, j, k, c) entries meaning C^k_ij = c (0-based indices).
        The antisymmetric partner C^k_ji = -c is filled in.
        """
        constants = np.zeros((dim, dim, dim), dtype=object)
        for i, j, k, c in brackets:
            if not all(0 <= index < dim for index in (i, j, k)):
                raise DimensionError(f"Bracket index ({i}, {j}, {k}) out of range for dimension {dim}")
            constants[i, j, k] = c
            constants[j, i, k] = -c
        return cls(constants)

    @classmethod
    def su2(cls):
        return cls.from_brackets(3, [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)])

    @classmethod
    def abelian(cls, dim):
        return cls(np.zeros((dim, dim, dim), dtype=object))

    @property
    def dim(self):
        return self.constants.shape[0]

    @cached_property
    def nonzero(self):
        return [
            (i, j, k, self.constants[i, j, k])
            for i, j, k in product(range(self.dim), repeat=3)
            if self.constants[i, j, k] != 0
        ]

    @property
    def is_exact(self):
        return all(isinstance(value, EXACT_TYPES) for value in self.constants.flat)

    def bracket(self, a, b):
        out = [0] * self.dim
        for i, j, k, c in self.nonzero:
            out[k] = out[k] + c * a[i] * b[j]
        return out


@dataclass(frozen=True)
class LieReport:
    ok: bool
    violation: str = None
    triple: tuple = None

    def __str__(self):
        if self.ok:
            return 'ok'
        return f"{self.violation} violated at {tuple(i + 1 for i in self.triple)}"


def validate_lie(structure):
    """
    Check antisymmetry, then the Jacobi identity. Exact on int/Fraction
    constants, LIE_TOLERANCE otherwise. Reports the first violating (i, j, k)
    in lexicographic order.
    """
    c = structure.constants
    r = structure.dim
    exact = structure.is_exact

    def vanishes(value):
        return value == 0 if exact else abs(value) <= LIE_TOLERANCE

    for i, j, k in product(range(r), repeat=3):
        if not vanishes(c[i, j, k] + c[j, i, k]):
            return LieReport(False, 'antisymmetry', (i, j, k))
    for i, j, k in product(range(r), repeat=3):
        for l in range(r):
            total = sum(
                c[i, j, m] * c[m, k, l] + c[j, k, m] * c[m, i, l] + c[k, i, m] * c[m, j, l]
                for m in range(r)
            )
            if not vanishes(total):
                return LieReport(False, 'jacobi', (i, j, k))
    return LieReport(True)


@dataclass(frozen=True, eq=False)
class ValueSpace:
    """A vector space with a named basis, optionally carrying a Lie bracket."""
    name: str
    labels: tuple
    field: str = REAL
    lie: LieStructure = None

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise DimensionError(f"Value space '{self.name}' needs at least one basis label")
        if len(set(labels)) != len(labels):
            raise DimensionError(f"Basis labels of '{self.name}' must be unique: {labels}")
        if self.field not in (REAL, COMPLEX):
            raise ValueError(f"Unknown field '{self.field}'")
        if self.lie is not None and self.lie.dim != len(labels):
            raise DimensionError(
                f"Lie structure of dimension {self.lie.dim} on a {len(labels)}-dimensional space"
            )
        object.__setattr__(self, 'labels', labels)

    @classmethod
    def trivial(cls):
        return TRIVIAL

    @classmethod
    def tangent(cls, chart):
        return cls(f"T{chart.name}", chart.coord_names)

    @classmethod
    def numbered(cls, name, dim, prefix='e', field=REAL, lie=None):
        return cls(name, tuple(f"{prefix}{i + 1}" for i in range(dim)), field, lie)

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise DimensionError(f"'{label}' is not a basis label of {self.name}") from None

    def matches(self, other):
        return self.labels == other.labels


TRIVIAL = ValueSpace('R', ('1',))


@dataclass(frozen=True)
class ValuedForm:
    """psi^i (x) E_i as label -> AlternatingTensor. Missing labels are zero."""
    dim: int
    degree: int
    space: ValueSpace
    parts: dict = field(default_factory=dict)
    variance: str = COVARIANT

    def __post_init__(self):
        if not 0 <= self.degree <= self.dim:
            raise DegreeError(f"Degree {self.degree} out of range for dimension {self.dim}")
        for label, part in self.parts.items():
            self.space.index(label)
            if (part.dim, part.degree, part.variance) != (self.dim, self.degree, self.variance):
                raise DegreeError(
                    f"Part '{label}' is a degree-{part.degree} {part.variance} tensor, "
                    f"expected degree {self.degree} {self.variance}"
                )

    @classmethod
    def build(cls, dim, degree, space, parts, variance=COVARIANT):
        kept = {label: part for label, part in parts.items() if not part.is_zero()}
        return cls(dim, degree, space, kept, variance)

    @classmethod
    def zero(cls, dim, degree, space, variance=COVARIANT):
        return cls(dim, degree, space, {}, variance)

    @classmethod
    def from_tensor(cls, tensor, space=None, label=None):
        """A plain form as a valued form on one basis label (the trivial '1' by default)."""
        space = space or TRIVIAL
        label = label or space.labels[0]
        return cls.build(tensor.dim, tensor.degree, space, {label: tensor}, tensor.variance)

    @classmethod
    def from_scalars(cls, dim, space, values):
        """A degree-0 valued form from label -> scalar."""
        parts = {label: AlternatingTensor.scalar(dim, value) for label, value in values.items()}
        return cls.build(dim, 0, space, parts)

    def part(self, label):
        self.space.index(label)
        return self.parts.get(label) or AlternatingTensor.zero(self.dim, self.degree, self.variance)

    def scalar(self, label):
        """The coefficient on `label` of a degree-0 valued form."""
        if self.degree != 0:
            raise DegreeError("Only degree-0 valued forms have scalar values")
        return self.part(label).get(())

    def at(self, point):
        point = tuple(float(v) for v in point)
        return ValuedForm(
            self.dim, self.degree, self.space,
            {label: part.evaluate(point) for label, part in self.parts.items()},
            self.variance,
        )

    def map_parts(self, function, degree=None, variance=None):
        """Apply a tensor -> tensor map to every part."""
        parts = {label: function(part) for label, part in self.parts.items()}
        if degree is None:
            degree = next(iter(parts.values())).degree if parts else self.degree
        if variance is None:
            variance = next(iter(parts.values())).variance if parts else self.variance
        return ValuedForm.build(self.dim, degree, self.space, parts, variance)

    def scale(self, factor):
        return self.map_parts(lambda part: part.scale(factor), self.degree, self.variance)

    def __add__(self, other):
        self._check_compatible(other)
        parts = dict(self.parts)
        for label, part in other.parts.items():
            parts[label] = parts[label] + part if label in parts else part
        return ValuedForm.build(self.dim, self.degree, self.space, parts, self.variance)

    def __neg__(self):
        return self.map_parts(lambda part: -part, self.degree, self.variance)

    def __sub__(self, other):
        return self + (-other)

    def magnitudes(self):
        """label -> max |component| for every label of the value space."""
        return {
            label: float(self.parts[label].max_abs()) if label in self.parts else 0.0
            for label in self.space.labels
        }

    def is_zero(self):
        return not self.parts

    def _check_compatible(self, other):
        if not self.space.matches(other.space):
            raise DimensionError(f"Cannot combine values in {self.space.name} and {other.space.name}")
        if (self.dim, self.degree, self.variance) != (other.dim, other.degree, other.variance):
            raise DegreeError(
                f"Cannot combine degree-{self.degree} and degree-{other.degree} valued forms"
            )


@dataclass(frozen=True, eq=False)
class PointwiseForm:
    """
    A valued form known only through its values at points: `function(point)`
    returns an evaluated ValuedForm with this form's shape.
    """
    dim: int
    degree: int
    space: ValueSpace
    function: object
    variance: str = COVARIANT

    def at(self, point):
        value = self.function(tuple(float(v) for v in point))
        if (value.dim, value.degree, value.variance) != (self.dim, self.degree, self.variance):
            raise DegreeError(
                f"Pointwise form produced degree {value.degree}, declared {self.degree}"
            )
        return value
