"""
Registry of the operators D a clause can apply to sigma~.

Every operator is called as operator(chart, section, **arguments) and
returns a field with dim/degree/space/variance and `.at(point)`.
"""

from core.exceptions import UnknownOperator
from diffops.curvature import riemann_field
from diffops.exterior import covariant_D, exterior_d
from diffops.quantum import dirac_operator, schrodinger_operator
from diffops.vectors import projected_lie

OPERATORS = {}


def register(name):
    def decorator(function):
        OPERATORS[name] = function
        return function
    return decorator


def get_operator(name):
    try:
        return OPERATORS[name]
    except KeyError:
        known = ', '.join(sorted(OPERATORS))
        raise UnknownOperator(f"Unknown operator '{name}' (known: {known})") from None


@register('identity')
def identity(chart, section):
    return section


@register('d')
def d(chart, section):
    return exterior_d(section)


@register('covariant_d')
def covariant_d(chart, section, connection=None):
    return covariant_D(connection, section)


@register('projected_lie')
def projected(chart, section, projection, x):
    return projected_lie(chart, projection, x)(section)


@register('riemann')
def riemann(chart, section):
    return riemann_field(section)


@register('schrodinger')
def schrodinger(chart, section, hamiltonian):
    return schrodinger_operator(hamiltonian, section)


@register('dirac')
def dirac(chart, section, gammas):
    return dirac_operator(gammas, section)
