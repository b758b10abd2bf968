"""
Conditions of the form Phi(sigma, D sigma~) (x) phi = rhs and the reports
produced by checking them over sample sets.

A condition is a tuple of clauses sharing one chart. Each clause has its own
pairing, value map, operator and sections; a condition with more than one
clause reports its labels as '<clause>:<label>'.
"""

from dataclasses import dataclass, field
from typing import Optional

from exterior.models import CONTRAVARIANT, COVARIANT, AlternatingTensor
from valued.models import TRIVIAL, ValuedForm
from valued.pairings import as_multivector, lift_pointwise, tilde

# How sigma is obtained when it is derived from sigma~ at each point
IDENTITY = 'identity'
TILDE = 'tilde'
VECTOR = 'vector'
DERIVATIONS = (IDENTITY, TILDE, VECTOR)


def unit(dim):
    """The constant function 1 with trivial values."""
    return ValuedForm.from_tensor(AlternatingTensor.scalar(dim, 1))


@dataclass(frozen=True)
class ClauseSpec:
    """An unbound clause: operator and pairing names plus the sections they act on."""
    pairing: str
    phi: object
    operator: str
    sigma_tilde: object
    sigma: object = None
    derive: Optional[str] = None
    operator_args: dict = field(default_factory=dict)
    rhs: object = None
    label: str = ''


@dataclass(frozen=True)
class ConditionSpec:
    name: str
    chart: object
    clauses: tuple
    entry: str = ''


@dataclass(frozen=True, eq=False)
class Clause:
    label: str
    pairing: object
    phi: object
    sigma_tilde: object
    d_sigma_tilde: object
    sigma: object
    derive: Optional[str]
    rhs: object
    degree: int

    @property
    def uses_metric(self):
        return self.pairing.uses_metric or self.derive == TILDE

    def output_label(self, label):
        return f"{self.label}:{label}" if self.label else label

    @property
    def labels(self):
        return tuple(self.output_label(label) for label in self.phi.target.labels)

    def sigma_at(self, point, g):
        if self.derive is None:
            return self.sigma.at(point)
        base = self.sigma_tilde.at(point)
        if self.derive == TILDE:
            return tilde(base, g)
        if self.derive == VECTOR:
            return as_multivector(base)
        return base

    def evaluate(self, point, g=None):
        """The clause residual at a point as an evaluated valued form."""
        lifted = lift_pointwise(self.pairing, self.phi, self.sigma_at(point, g), self.d_sigma_tilde.at(point), g)
        if self.rhs is not None:
            lifted = lifted - self.rhs.at(point)
        return lifted


def derived_shape(derive, sigma_tilde):
    """(degree, variance, space) of sigma when it is derived from sigma~."""
    if derive == IDENTITY:
        return sigma_tilde.degree, sigma_tilde.variance, sigma_tilde.space
    if derive == TILDE:
        variance = CONTRAVARIANT if sigma_tilde.variance == COVARIANT else COVARIANT
        return sigma_tilde.degree, variance, sigma_tilde.space
    return 1, CONTRAVARIANT, TRIVIAL


@dataclass(frozen=True, eq=False)
class GrCondition:
    name: str
    chart: object
    clauses: tuple
    entry: str = ''

    @property
    def labels(self):
        return tuple(label for clause in self.clauses for label in clause.labels)

    @property
    def uses_metric(self):
        return any(clause.uses_metric for clause in self.clauses)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class LabelNorm:
    linf: float
    rms: float


@dataclass(frozen=True)
class ResidualReport:
    """
    The outcome of checking one condition: per-label L-infinity and RMS norms
    over the evaluated points, the tolerance and the verdict. `expect` is the
    verdict a fixture declares, if any.
    """
    name: str
    entry: str
    samples: dict
    norms: dict
    tol: float
    passed: bool
    worst_point: tuple
    expect: Optional[str] = None

    @property
    def linf(self):
        return max(norm.linf for norm in self.norms.values())

    @property
    def requested(self):
        return self.samples['requested']

    @property
    def excluded(self):
        return self.samples['excluded']

    @property
    def evaluated(self):
        return self.requested - self.excluded

    @property
    def verdict(self):
        return 'pass' if self.passed else 'fail'

    @property
    def meets_expectation(self):
        return self.expect is None or self.expect == self.verdict
