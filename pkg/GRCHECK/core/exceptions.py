"""
Error hierarchy shared by every GRCHECK app.

Pointwise failures (a singular metric or a division by ~0 at one sample)
derive from PointwiseError; the engine records those points as excluded
instead of aborting a verification run.
"""


class GRCheckError(Exception):
    """Root of all verifier errors."""


# Algebra / shape errors

class DegreeError(GRCheckError):
    pass


class VarianceError(GRCheckError):
    pass


class DimensionError(GRCheckError):
    pass


# Pointwise evaluation errors

class PointwiseError(GRCheckError):
    pass


class EvalSingularity(PointwiseError):
    pass


class SingularMetricError(PointwiseError):
    pass


class DomainError(GRCheckError):
    pass


# Operator errors

class NonIdempotentProjection(GRCheckError):
    pass


class GammaConventionError(GRCheckError):
    pass


class StepError(GRCheckError):
    pass


class DegenerateFormError(GRCheckError):
    pass


# Binding / lookup errors

class EmptySampleSet(GRCheckError):
    pass


class UnknownOperator(GRCheckError):
    pass


class UnknownEntry(GRCheckError):
    pass


class MissingParameter(GRCheckError):
    pass


class UnknownName(GRCheckError):
    pass


class ArityError(GRCheckError):
    pass


class ParameterError(GRCheckError):
    """An argument of the wrong kind for a catalog parameter."""
