"""
Pointwise curvature fields of a chart metric: the inverse metric, the lowered
Riemann tensor and the Ricci tensor, each as a degree-0 valued form whose
labels enumerate the tensor components.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from core.exceptions import DimensionError
from exterior.models import COVARIANT
from valued.models import PointwiseForm, ValuedForm, ValueSpace
from valued.phi import inverse_metric_space, ricci_space, riemann_space

from . import geometry


@dataclass(frozen=True, eq=False)
class MetricField:
    """The metric g_ab of a chart as a section, labels 'g[a,b]'."""
    chart: object
    degree = 0
    variance = COVARIANT

    @property
    def dim(self):
        return self.chart.dim

    @property
    def metric(self):
        return self.chart.metric

    @cached_property
    def space(self):
        names = self.chart.coord_names
        return ValueSpace('g', tuple(f"g[{a},{b}]" for a, b in product(names, repeat=2)))

    def at(self, point):
        matrix = self.metric.matrix_at(point)
        return _from_array(self.dim, self.space, matrix.ravel())


def _from_array(dim, space, values):
    return ValuedForm.from_scalars(dim, space, dict(zip(space.labels, (complex(v) for v in values))))


def inverse_metric_field(chart):
    """g^ab at every point, labels 'g^[a,b]'."""
    space = inverse_metric_space(chart)

    def evaluate(point):
        return _from_array(chart.dim, space, chart.metric.inverse_at(point).ravel())

    return PointwiseForm(chart.dim, 0, space, evaluate)


def riemann_field(metric_field):
    """R_{asbm} = g_ar R^r_{sbm}, labels 'R[a,s,b,m]'."""
    if not isinstance(metric_field, MetricField):
        raise DimensionError("The curvature operator acts on a chart metric")
    chart = metric_field.chart
    space = riemann_space(chart)

    def evaluate(point):
        return _from_array(chart.dim, space, geometry.lowered_riemann_at(chart.metric, point).ravel())

    return PointwiseForm(chart.dim, 0, space, evaluate)


def ricci(metric, point):
    """R_{sm} at a point as an n x n array."""
    return geometry.ricci_at(metric, point)


def ricci_field(chart):
    """R_{sm} for s <= m computed directly, labels 'Ric[s,m]'."""
    space = ricci_space(chart)
    n = chart.dim

    def evaluate(point):
        matrix = ricci(chart.metric, point)
        return _from_array(n, space, (matrix[s, m] for s in range(n) for m in range(s, n)))

    return PointwiseForm(n, 0, space, evaluate)
