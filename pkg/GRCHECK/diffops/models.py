from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from core.exceptions import DegreeError, DimensionError, DomainError, GammaConventionError
from exterior.models import CONTRAVARIANT, COVARIANT, AlternatingTensor
from fields.models import Const, ScalarExpr, as_expr
from valued.models import TRIVIAL, ValuedForm, ValueSpace

from . import geometry


def vector_components(field_, dim=None):
    """
    Components X^mu of a vector field as scalar expressions. Accepts a
    sequence, a contravariant 1-vector, or a tangent-valued function.
    """
    if isinstance(field_, ValuedForm):
        if field_.degree == 0 and field_.space.dim == field_.dim:
            return tuple(as_expr(field_.scalar(label)) for label in field_.space.labels)
        if field_.degree == 1 and field_.variance == CONTRAVARIANT and field_.space.dim == 1:
            field_ = field_.part(field_.space.labels[0])
        else:
            raise DimensionError("Expected a vector field")
    if isinstance(field_, AlternatingTensor):
        if field_.degree != 1 or field_.variance != CONTRAVARIANT:
            raise DegreeError("Expected a contravariant 1-vector")
        return tuple(as_expr(field_.get((mu,))) for mu in range(field_.dim))
    components = tuple(as_expr(value) for value in field_)
    if dim is not None and len(components) != dim:
        raise DimensionError(f"Vector field has {len(components)} components on a {dim}-chart")
    return components


def vector_tensor(components):
    """The contravariant 1-vector with the given components."""
    dim = len(components)
    return AlternatingTensor.build(dim, 1, {(mu,): value for mu, value in enumerate(components)}, CONTRAVARIANT)


def tangent_function(chart, components):
    """X^mu (x) d_mu as a degree-0 form valued in the tangent space."""
    space = ValueSpace.tangent(chart)
    return ValuedForm.from_scalars(chart.dim, space, dict(zip(space.labels, components)))


@dataclass(frozen=True, eq=False)
class PointwiseFunction:
    """A scalar function known through its value and gradient at points."""
    dim: int
    value: object
    gradient: object
    space: ValueSpace = TRIVIAL
    degree = 0
    variance = COVARIANT

    def at(self, point):
        point = tuple(float(v) for v in point)
        return ValuedForm.from_scalars(self.dim, self.space, {self.space.labels[0]: self.value(point)})


@dataclass(frozen=True, eq=False)
class LieConnection:
    """A connection form omega = omega^j (x) E_j with values in a Lie algebra."""
    omega: ValuedForm

    def __post_init__(self):
        if self.omega.degree != 1:
            raise DegreeError(f"A connection form has degree 1, got {self.omega.degree}")
        if self.omega.space.lie is None:
            raise DimensionError(f"Connection values in {self.omega.space.name}, which has no Lie bracket")

    @property
    def space(self):
        return self.omega.space


@dataclass(frozen=True, eq=False)
class ChristoffelSymbols:
    """
    Explicit bundle connection nabla(s_j) = Gamma^i_{mu j} dx^mu (x) s_i on a
    value space of dimension r. `matrices[mu][i][j]` is Gamma^i_{mu j}.
    """
    space: ValueSpace
    matrices: tuple

    def __post_init__(self):
        r = self.space.dim
        matrices = tuple(
            tuple(tuple(as_expr(value) for value in row) for row in matrix) for matrix in self.matrices
        )
        for matrix in matrices:
            if len(matrix) != r or any(len(row) != r for row in matrix):
                raise DimensionError(f"Connection matrices must be {r} x {r}")
        object.__setattr__(self, 'matrices', matrices)

    @property
    def dim(self):
        return len(self.matrices)

    @cached_property
    def is_zero(self):
        return all(isinstance(v, Const) and v.value == 0 for m in self.matrices for row in m for v in row)

    def at(self, point):
        """A[i, mu, j] = Gamma^i_{mu j} at the point."""
        r = self.space.dim
        out = np.zeros((r, self.dim, r), dtype=complex)
        for mu, matrix in enumerate(self.matrices):
            for i, row in enumerate(matrix):
                for j, value in enumerate(row):
                    out[i, mu, j] = value.evaluator(point)
        return out


@dataclass(frozen=True, eq=False)
class LeviCivitaConnection:
    """The torsion-free metric connection on the tangent bundle of a chart."""
    chart: object

    @property
    def metric(self):
        return self.chart.metric

    @cached_property
    def space(self):
        return ValueSpace.tangent(self.chart)

    @property
    def dim(self):
        return self.chart.dim

    @property
    def is_zero(self):
        return self.metric.is_constant

    def at(self, point):
        return geometry.christoffel_at(self.metric, point)

    def derivatives_at(self, point):
        return geometry.christoffel_derivatives_at(self.metric, point)


def christoffels_from_metric(chart):
    """Levi-Civita symbols of the chart metric, evaluated on demand at each point."""
    return LeviCivitaConnection(chart)


PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def dirac_matrices():
    """Dirac representation for signature (-,-,-,+): three spatial gammas, then the time gamma."""
    zero = np.zeros((2, 2), dtype=complex)
    spatial = [np.block([[zero, sigma], [-sigma, zero]]) for sigma in PAULI]
    time = np.diag([1, 1, -1, -1]).astype(complex)
    return tuple(spatial + [time])


def _inverse(eta):
    diagonal = np.diag(np.diag(eta))
    if np.array_equal(diagonal, eta):
        return np.diag(1.0 / np.diag(eta))
    return np.linalg.inv(eta)


MINUS = '-'
PLUS = '+'


@dataclass(frozen=True, eq=False)
class GammaSystem:
    """
    Gamma matrices with gamma_mu gamma_nu + gamma_nu gamma_mu = 2 eta_{mu nu} I,
    a mass, the sign of the mass term in the reduced equation
    (i gamma^mu d_mu -/+ m) psi, and an optional external potential A.
    """
    eta: np.ndarray
    matrices: tuple = field(default_factory=dirac_matrices)
    mass: float = 0.0
    sign: str = MINUS
    charge: float = 0.0
    potential: AlternatingTensor = None

    def __post_init__(self):
        if self.sign not in (MINUS, PLUS):
            raise GammaConventionError(f"Unknown sign '{self.sign}'")
        if self.mass < 0:
            raise GammaConventionError("The mass must be non-negative")
        self.validate()

    @property
    def dim(self):
        return len(self.matrices)

    def validate(self):
        eta = np.asarray(self.eta)
        identity = np.eye(4)
        if eta.shape != (self.dim, self.dim):
            raise GammaConventionError(f"{self.dim} gamma matrices for a metric of shape {eta.shape}")
        for mu, a in enumerate(self.matrices):
            for nu, b in enumerate(self.matrices):
                if not np.array_equal(a @ b + b @ a, 2 * eta[mu, nu] * identity):
                    raise GammaConventionError(f"Anticommutator of gamma_{mu + 1} and gamma_{nu + 1} is not 2 eta I")
        for mu, a in enumerate(self.matrices):
            if not np.array_equal(a @ self.inverses[mu], identity):
                raise GammaConventionError(f"gamma_{mu + 1} is not invertible")
        if not np.array_equal(self.contraction(), -2 * identity):
            raise GammaConventionError("eta^{mu nu} gamma_mu gamma_nu^-1 is not -2 I")

    @cached_property
    def inverses(self):
        # gamma_mu^2 = eta_mumu I, so the inverse is gamma_mu / eta_mumu
        return tuple(matrix / self.eta[mu, mu] for mu, matrix in enumerate(self.matrices))

    @cached_property
    def raised(self):
        """gamma^mu = eta^{mu nu} gamma_nu."""
        eta_inverse = _inverse(self.eta)
        return tuple(
            sum(eta_inverse[mu, nu] * self.matrices[nu] for nu in range(self.dim)) for mu in range(self.dim)
        )

    def contraction(self):
        eta_inverse = _inverse(self.eta)
        return sum(
            eta_inverse[mu, nu] * self.matrices[mu] @ self.inverses[nu]
            for mu in range(self.dim) for nu in range(self.dim) if eta_inverse[mu, nu] != 0
        )

    @property
    def mass_coefficient(self):
        """Coefficient c of c gamma^-1 in the operator; the contraction turns it into -2c."""
        return 0.5 * self.mass if self.sign == MINUS else -0.5 * self.mass


@dataclass(frozen=True, eq=False)
class HamiltonianSpec:
    """H = -hbar^2/2m Laplacian + V on the spatial coordinates; the last coordinate is time."""
    hbar: float = 1.0
    mass: float = 1.0
    potential: ScalarExpr = None

    def __post_init__(self):
        if self.hbar <= 0 or self.mass <= 0:
            raise DomainError("hbar and the mass must be positive")
        object.__setattr__(self, 'potential', as_expr(0 if self.potential is None else self.potential))
