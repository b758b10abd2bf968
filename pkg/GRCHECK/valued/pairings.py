"""
Form-level bilinear maps Phi and the lift of (Phi, phi) to valued forms.

A pairing takes the form part of sigma and the form part of D(sigma~) at one
point and returns a form; `output_degree` does the degree bookkeeping ahead
of any evaluation so shape errors surface when a condition is bound.
"""

from core.exceptions import DegreeError, DimensionError, VarianceError
from exterior.algebra import hodge, interior, metric_pairing, musical_tilde, scalar_part, wedge
from exterior.models import CONTRAVARIANT, COVARIANT, AlternatingTensor

from .models import ValuedForm


class FormPairing:
    name = ''
    uses_metric = False

    def output_degree(self, left, right, dim):
        """left/right are (degree, variance) pairs."""
        raise NotImplementedError

    def __call__(self, a, b, g=None):
        raise NotImplementedError

    def __repr__(self):
        return self.name


def _require(variance, expected, role):
    if variance != expected:
        raise VarianceError(f"{role} must be {expected}, got {variance}")


class InteriorAfterTilde(FormPairing):
    """i(a~) b: raise the form a with the metric at the point, then substitute."""
    name = 'interior_after_tilde'
    uses_metric = True

    def output_degree(self, left, right, dim):
        _require(left[1], COVARIANT, 'sigma')
        _require(right[1], COVARIANT, 'D(sigma~)')
        if left[0] > right[0]:
            raise DegreeError(f"Cannot substitute a {left[0]}-vector into a {right[0]}-form")
        return right[0] - left[0]

    def __call__(self, a, b, g=None):
        return interior(musical_tilde(a, g), b)


class Interior(FormPairing):
    name = 'interior'

    def output_degree(self, left, right, dim):
        if left[0] > 0:
            _require(left[1], CONTRAVARIANT, 'sigma')
        _require(right[1], COVARIANT, 'D(sigma~)')
        if left[0] > right[0]:
            raise DegreeError(f"Cannot substitute a {left[0]}-vector into a {right[0]}-form")
        return right[0] - left[0]

    def __call__(self, a, b, g=None):
        if a.degree == 0:
            return b.scale(scalar_part(a))
        return interior(a, b)


class Wedge(FormPairing):
    name = 'wedge'

    def output_degree(self, left, right, dim):
        _require(left[1], COVARIANT, 'sigma')
        _require(right[1], COVARIANT, 'D(sigma~)')
        if left[0] + right[0] > dim:
            raise DegreeError(f"Wedge of degrees {left[0]} and {right[0]} exceeds dimension {dim}")
        return left[0] + right[0]

    def __call__(self, a, b, g=None):
        return wedge(a, b)


class MetricPairing(FormPairing):
    """g^{mu nu} a_mu b_nu on 1-forms."""
    name = 'metric_pairing'
    uses_metric = True

    def output_degree(self, left, right, dim):
        if (left, right) != ((1, COVARIANT), (1, COVARIANT)):
            raise DegreeError("The metric pairing needs two 1-forms")
        return 0

    def __call__(self, a, b, g=None):
        return AlternatingTensor.scalar(a.dim, metric_pairing(a, b, g))


class ScalarMultiply(FormPairing):
    """sigma is a function; Phi(f, w) = f w."""
    name = 'scalar_multiply'

    def output_degree(self, left, right, dim):
        if left[0] != 0:
            raise DegreeError(f"Scalar multiplication needs a function as sigma, got degree {left[0]}")
        return right[0]

    def __call__(self, a, b, g=None):
        return b.scale(scalar_part(a))


class Trace(FormPairing):
    """Product of functions; the index contraction is carried by phi."""
    name = 'trace'

    def output_degree(self, left, right, dim):
        if left[0] != 0 or right[0] != 0:
            raise DegreeError("The trace pairing multiplies functions")
        return 0

    def __call__(self, a, b, g=None):
        return AlternatingTensor.scalar(a.dim, scalar_part(a) * scalar_part(b))


PAIRINGS = {
    pairing.name: pairing
    for pairing in (InteriorAfterTilde(), Interior(), Wedge(), MetricPairing(), ScalarMultiply(), Trace())
}


def lift_pointwise(pairing, phi, a, b, g=None):
    """
    (Phi, phi)(a, b) = sum_ij Phi(a^i, b^j) (x) phi(E_i, E_j), expanded in the
    target basis of phi.
    """
    if a.dim != b.dim:
        raise DimensionError(f"Valued forms on charts of dimension {a.dim} and {b.dim}")
    if not phi.left.matches(a.space):
        raise DimensionError(f"{phi!r} expects {phi.left.name} on the left, got {a.space.name}")
    if not phi.right.matches(b.space):
        raise DimensionError(f"{phi!r} expects {phi.right.name} on the right, got {b.space.name}")
    degree = pairing.output_degree((a.degree, a.variance), (b.degree, b.variance), a.dim)
    out = {}
    for left_label, left in a.parts.items():
        i = phi.left_index[left_label]
        for right_label, right in b.parts.items():
            image = phi.table.get((i, phi.right_index[right_label]))
            if not image:
                continue
            paired = pairing(left, right, g)
            if paired.is_zero():
                continue
            for label, c in image:
                term = paired if c == 1 else paired.scale(c)
                out[label] = out[label] + term if label in out else term
    return ValuedForm.build(a.dim, degree, phi.target, out)


def star(form, g):
    """Hodge star applied to every value component."""
    if form.variance != COVARIANT:
        raise VarianceError("The Hodge star acts on forms")
    return form.map_parts(lambda part: hodge(part, g), form.dim - form.degree, COVARIANT)


def tilde(form, g):
    """Musical isomorphism applied to every value component."""
    variance = CONTRAVARIANT if form.variance == COVARIANT else COVARIANT
    return form.map_parts(lambda part: musical_tilde(part, g), form.degree, variance)


def as_multivector(form):
    """A tangent-valued function X^mu (x) d_mu read as the 1-vector X^mu d_mu (trivial values)."""
    if form.degree != 0:
        raise DegreeError("Only a tangent-valued function can be read as a vector field")
    if form.space.dim != form.dim:
        raise DimensionError(f"{form.space.name} is not a tangent space of a {form.dim}-chart")
    components = {(i,): form.scalar(label) for i, label in enumerate(form.space.labels)}
    vector = AlternatingTensor.build(form.dim, 1, components, CONTRAVARIANT)
    return ValuedForm.from_tensor(vector)
