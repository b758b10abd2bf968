import logging
import math
from concurrent.futures import ThreadPoolExecutor

from core.conf import grcheck_settings
from core.exceptions import (
    DegenerateFormError, DegreeError, DimensionError, DomainError, EmptySampleSet, PointwiseError,
)
from fields.evaluation import is_finite
from valued.pairings import PAIRINGS

from .models import DERIVATIONS, VECTOR, Clause, GrCondition, LabelNorm, ResidualReport, derived_shape
from .operators import get_operator

logger = logging.getLogger(__name__)

# Raised at a single sample point; the point is excluded and the run goes on
EXCLUDED_AT_POINT = (PointwiseError, DomainError, DegenerateFormError)


def _pairing(name):
    try:
        return PAIRINGS[name]
    except KeyError:
        raise DimensionError(f"Unknown form pairing '{name}'") from None


def _check_dim(chart, section, role):
    if section.dim != chart.dim:
        raise DimensionError(f"{role} lives on a {section.dim}-chart, condition on '{chart.name}' ({chart.dim})")


def bind_clause(chart, spec):
    pairing = _pairing(spec.pairing)
    operator = get_operator(spec.operator)
    _check_dim(chart, spec.sigma_tilde, 'sigma~')
    d_sigma_tilde = operator(chart, spec.sigma_tilde, **spec.operator_args)
    _check_dim(chart, d_sigma_tilde, f"{spec.operator}(sigma~)")

    if spec.derive is not None:
        if spec.derive not in DERIVATIONS:
            raise DimensionError(f"Unknown derivation '{spec.derive}' for sigma")
        if spec.derive == VECTOR and (spec.sigma_tilde.degree != 0 or spec.sigma_tilde.space.dim != chart.dim):
            raise DimensionError("Only a tangent-valued function can serve as its own vector field")
        degree, variance, space = derived_shape(spec.derive, spec.sigma_tilde)
        sigma = None
    else:
        if spec.sigma is None:
            raise DimensionError("A clause needs sigma or a rule deriving it from sigma~")
        _check_dim(chart, spec.sigma, 'sigma')
        sigma = spec.sigma
        degree, variance, space = sigma.degree, sigma.variance, sigma.space

    phi = spec.phi
    if not phi.left.matches(space):
        raise DimensionError(f"{phi!r} expects {phi.left.name} on the left, sigma has values in {space.name}")
    if not phi.right.matches(d_sigma_tilde.space):
        raise DimensionError(
            f"{phi!r} expects {phi.right.name} on the right, D(sigma~) has values in {d_sigma_tilde.space.name}"
        )
    output = pairing.output_degree((degree, variance), (d_sigma_tilde.degree, d_sigma_tilde.variance), chart.dim)

    if spec.rhs is not None:
        _check_dim(chart, spec.rhs, 'rhs')
        if spec.rhs.degree != output:
            raise DegreeError(f"rhs has degree {spec.rhs.degree}, the condition produces degree {output}")
        if not spec.rhs.space.matches(phi.target):
            raise DimensionError(f"rhs has values in {spec.rhs.space.name}, expected {phi.target.name}")

    return Clause(
        label=spec.label,
        pairing=pairing,
        phi=phi,
        sigma_tilde=spec.sigma_tilde,
        d_sigma_tilde=d_sigma_tilde,
        sigma=sigma,
        derive=spec.derive,
        rhs=spec.rhs,
        degree=output,
    )


def bind(spec):
    """Validate every clause of a ConditionSpec; shape errors surface here, not during verify."""
    clauses = tuple(bind_clause(spec.chart, clause) for clause in spec.clauses)
    if not clauses:
        raise DimensionError(f"Condition '{spec.name}' has no clauses")
    condition = GrCondition(spec.name, spec.chart, clauses, spec.entry)
    logger.debug(
        "Bound %s: %d clause(s), degrees %s, labels %s",
        spec.name, len(clauses), [clause.degree for clause in clauses], list(condition.labels),
    )
    return condition


def residual(condition, point):
    """Output label -> evaluated residual form at one point."""
    point = tuple(float(v) for v in point)
    g = condition.chart.metric.matrix_at(point) if condition.uses_metric else None
    out = {}
    for clause in condition.clauses:
        value = clause.evaluate(point, g)
        for label in clause.phi.target.labels:
            out[clause.output_label(label)] = value.part(label)
    return out


def _magnitudes(condition, point):
    """label -> max |component| at the point, or the reason the point is excluded."""
    try:
        values = residual(condition, point)
    except EXCLUDED_AT_POINT as exc:
        return str(exc)
    if not all(is_finite(complex(v)) for part in values.values() for v in part.components.values()):
        return "non-finite residual"
    return {label: float(part.max_abs()) for label, part in values.items()}


def verify(condition, samples, tol=None, workers=None, expect=None):
    tol = grcheck_settings('DEFAULT_TOL') if tol is None else tol
    workers = workers or grcheck_settings('WORKERS')
    points = samples.points()

    def evaluate(point):
        if samples.is_excluded(point):
            return "excluded by the sample predicate"
        return _magnitudes(condition, point)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(evaluate, points))
    else:
        outcomes = [evaluate(point) for point in points]

    labels = condition.labels
    linf = dict.fromkeys(labels, 0.0)
    squares = dict.fromkeys(labels, 0.0)
    worst, worst_value = None, -1.0
    evaluated = excluded = 0
    for point, outcome in zip(points, outcomes):
        if isinstance(outcome, str):
            excluded += 1
            logger.debug("Excluded %s from %s: %s", tuple(point), condition.name, outcome)
            continue
        evaluated += 1
        for label in labels:
            value = outcome[label]
            squares[label] += value * value
            if value > linf[label]:
                linf[label] = value
        peak = max(outcome.values())
        if peak > worst_value:
            worst, worst_value = point, peak

    if not evaluated:
        raise EmptySampleSet(f"No point of {samples.kind} sample set left for {condition.name} after exclusions")

    norms = {label: LabelNorm(linf[label], math.sqrt(squares[label] / evaluated)) for label in labels}
    description = samples.describe()
    description['excluded'] = excluded
    passed = max(norm.linf for norm in norms.values()) <= tol
    report = ResidualReport(
        name=condition.name,
        entry=condition.entry,
        samples=description,
        norms=norms,
        tol=tol,
        passed=passed,
        worst_point=tuple(float(v) for v in worst),
        expect=expect,
    )
    logger.info(
        "%s: %d point(s), %d excluded, L-inf %.3g, %s", condition.name, evaluated, excluded, report.linf, report.verdict,
    )
    return report
