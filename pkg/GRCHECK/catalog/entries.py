"""
The catalog: one builder per condition, each returning the clauses of a
General Rule condition on a chart.

Builders take the active chart plus coerced parameter values and return a
tuple of ClauseSpec; `build` binds them into a GrCondition.
"""

import logging
from itertools import permutations

from core.exceptions import DimensionError, ParameterError
from diffops.curvature import MetricField, inverse_metric_field
from diffops.exterior import curvature
from diffops.models import (
    ChristoffelSymbols, GammaSystem, HamiltonianSpec, LieConnection, christoffels_from_metric, tangent_function,
    vector_tensor,
)
from diffops.quantum import SPINOR, gamma_form
from diffops.symplectic import PoissonFunction, SymplecticForm, interior_field
from engine.evaluation import bind
from engine.models import IDENTITY, TILDE, VECTOR, ClauseSpec, ConditionSpec, unit
from exterior.algebra import hodge, interior, musical_tilde, wedge, wedge_all
from exterior.models import AlternatingTensor
from fields.calculus import add, mul
from fields.models import ZERO
from valued.models import TRIVIAL, ValuedForm, ValueSpace
from valued.pairings import star
from valued.phi import (
    DiagonalMap, DiracPairing, EndomorphismAction, FormalBracket, FunctionProduct, LieBracket, RicciContraction,
    SymmetrizedProduct,
)

from .models import Parameter, get_entry, register, require_chart
from .parameters import (
    BOOL, CHART, CONNECTION, FLAT, FORM, FORMS, LEVI_CIVITA, MATRIX, MULTIVECTOR, NUMBER, SCALAR, SCALARS, STRING,
    VECTOR as VECTOR_KIND, VECTORS, numeric_matrix,
)

logger = logging.getLogger(__name__)

# Two copies of the field: e1 carries F, e2 carries *F
MAXWELL_SPACE = ValueSpace.numbered('V', 2)

VALUE_MAPS = {
    'symmetrized': SymmetrizedProduct,
    'diagonal': DiagonalMap,
    'bracket': LieBracket,
    'formal_bracket': FormalBracket,
}


def build(entry_id, chart=None, arguments=None, name=None):
    """Instantiate a catalog entry as a bound GrCondition."""
    entry = get_entry(entry_id)
    values = entry.resolve(chart, arguments or {})
    chart = require_chart(entry, chart, values)
    clauses = entry.builder(chart, **values)
    logger.debug("Building %s on chart %s", entry_id, chart.name)
    return bind(ConditionSpec(name or entry_id, chart, tuple(clauses), entry_id))


# Section helpers

def plain(tensor):
    return ValuedForm.from_tensor(tensor)


def plain_part(form, role, degree=None):
    """The form part of a trivially valued form, optionally of a fixed degree."""
    if not form.space.matches(TRIVIAL):
        raise ParameterError(f"{role} must be a plain form, it has values in {form.space.name}")
    if degree is not None and form.degree != degree:
        raise ParameterError(f"{role} must have degree {degree}, got {form.degree}")
    return form.part(TRIVIAL.labels[0])


def scalar_form(chart, value):
    return plain(AlternatingTensor.scalar(chart.dim, value))


def vector_field(components):
    return plain(vector_tensor(components))


def one_form(chart, components):
    return AlternatingTensor.build(chart.dim, 1, {(mu,): value for mu, value in enumerate(components)})


def constant_metric(chart, entry_id):
    g = chart.metric.constant_matrix
    if g is None:
        raise DimensionError(f"{entry_id} needs a constant metric, chart '{chart.name}' has a varying one")
    return g


def lowered(chart, components):
    """u_mu = g_{mu nu} u^nu with the chart metric entries."""
    out = []
    for mu in range(chart.dim):
        total = ZERO
        for nu, component in enumerate(components):
            total = add(total, mul(chart.metric.entry(mu, nu), component))
        out.append(total)
    return tuple(out)


def connection_on(chart, spec, space):
    """'flat', 'levi_civita' or explicit matrices Gamma^i_{mu j}, one per coordinate."""
    if spec == FLAT:
        return None
    if spec == LEVI_CIVITA:
        if not space.matches(ValueSpace.tangent(chart)):
            raise DimensionError(f"The Levi-Civita connection acts on tangent vectors, not on {space.name}")
        return christoffels_from_metric(chart)
    if len(spec) != chart.dim:
        raise DimensionError(f"A connection needs one matrix per coordinate ({chart.dim}), got {len(spec)}")
    return ChristoffelSymbols(space, spec)


def maxwell_form(chart, field, entry_id):
    """Omega = F (x) e1 + *F (x) e2."""
    tensor = plain_part(field, 'F', 2)
    g = constant_metric(chart, entry_id)
    return ValuedForm.build(chart.dim, 2, MAXWELL_SPACE, {'e1': tensor, 'e2': hodge(tensor, g)})


def lie_connection(omega):
    return None if omega is None else LieConnection(omega)


# Vector fields, invariants and symplectic structure

@register(
    'first_integral', 'first integrals f of X: i(X) df = 0',
    Parameter('X', VECTOR_KIND), Parameter('f', SCALAR),
)
def first_integral(chart, X, f):
    return (ClauseSpec('interior', FunctionProduct(), 'd', scalar_form(chart, f), sigma=vector_field(X)),)


@register(
    'relative_invariant', 'relative integral invariant alpha of X: i(X) d alpha = 0',
    Parameter('X', VECTOR_KIND), Parameter('alpha', FORM),
)
def relative_invariant(chart, X, alpha):
    plain_part(alpha, 'alpha')
    return (ClauseSpec('interior', FunctionProduct(), 'd', alpha, sigma=vector_field(X)),)


@register(
    'absolute_invariant', 'absolute integral invariant: i(X) d alpha = 0 and i(X) alpha = 0',
    Parameter('X', VECTOR_KIND), Parameter('alpha', FORM),
)
def absolute_invariant(chart, X, alpha):
    plain_part(alpha, 'alpha')
    sigma = vector_field(X)
    return (
        ClauseSpec('interior', FunctionProduct(), 'd', alpha, sigma=sigma, label='closed'),
        ClauseSpec('interior', FunctionProduct(), 'identity', alpha, sigma=sigma, label='annihilated'),
    )


@register(
    'symplectic_closed', 'nondegenerate closed 2-form omega: d omega = 0',
    Parameter('omega', FORM),
)
def symplectic_closed(chart, omega):
    guard = SymplecticForm(omega).nondegenerate_unit()
    return (ClauseSpec('scalar_multiply', FunctionProduct(), 'd', omega, sigma=guard),)


@register(
    'hamiltonian_field', 'locally Hamiltonian field X: L_X omega = d i(X) omega = 0',
    Parameter('X', VECTOR_KIND), Parameter('omega', FORM),
)
def hamiltonian_field(chart, X, omega):
    guard = SymplecticForm(omega).nondegenerate_unit()
    return (ClauseSpec('scalar_multiply', FunctionProduct(), 'd', interior_field(X, omega), sigma=guard),)


@register(
    'poisson_first_integrals', 'Poisson function omega^-1(alpha, beta) is a first integral of Z',
    Parameter('omega', FORM), Parameter('alpha', FORM), Parameter('beta', FORM), Parameter('Z', VECTOR_KIND),
)
def poisson_first_integrals(chart, omega, alpha, beta, Z):
    function = PoissonFunction(omega, alpha, beta)
    return (ClauseSpec('interior', FunctionProduct(), 'd', function, sigma=vector_field(Z)),)


# Distributions

@register(
    'frobenius_vector', 'distribution spanned by X_i is involutive: pi([X_i, X_j]) = 0',
    Parameter('fields', VECTORS), Parameter('projection', MATRIX),
)
def frobenius_vector(chart, fields, projection):
    if len(fields) < 2:
        raise ParameterError("frobenius_vector needs at least two vector fields")
    tangent = ValueSpace.tangent(chart)
    pairs = [(i, j) for i in range(len(fields)) for j in range(i + 1, len(fields))]
    return tuple(
        ClauseSpec(
            'scalar_multiply', FunctionProduct(tangent), 'projected_lie',
            tangent_function(chart, fields[j]), sigma=unit(chart.dim),
            operator_args={'projection': projection, 'x': fields[i]},
            label=f"[{i + 1},{j + 1}]" if len(pairs) > 1 else '',
        )
        for i, j in pairs
    )


@register(
    'frobenius_pfaff', 'Pfaff system alpha_a is integrable: d alpha_a ^ alpha_1 ^ ... ^ alpha_r = 0',
    Parameter('forms', FORMS),
)
def frobenius_pfaff(chart, forms):
    tensors = [plain_part(form, 'forms', 1) for form in forms]
    if not tensors:
        raise ParameterError("frobenius_pfaff needs at least one 1-form")
    sigma = plain(wedge_all(tensors))
    return tuple(
        ClauseSpec(
            'wedge', FunctionProduct(), 'd', form, sigma=sigma,
            label=f"[{a + 1}]" if len(forms) > 1 else '',
        )
        for a, form in enumerate(forms)
    )


# Connections and parallel sections

@register(
    'nabla_parallel', 'sigma is parallel along X: nabla_X sigma = 0',
    Parameter('X', VECTOR_KIND), Parameter('sigma', VECTOR_KIND), Parameter('connection', CONNECTION, LEVI_CIVITA),
)
def nabla_parallel(chart, X, sigma, connection):
    tangent = ValueSpace.tangent(chart)
    return (
        ClauseSpec(
            'interior', FunctionProduct(tangent), 'covariant_d', tangent_function(chart, sigma),
            sigma=vector_field(X), operator_args={'connection': connection_on(chart, connection, tangent)},
        ),
    )


@register(
    'theta_pi_parallel', 'i(Theta)(D Psi)^i (x) Pi(s_i) = 0',
    Parameter('theta', MULTIVECTOR), Parameter('psi', FORM), Parameter('projection', MATRIX),
    Parameter('connection', CONNECTION, FLAT),
)
def theta_pi_parallel(chart, theta, psi, projection, connection):
    plain_part(theta, 'theta')
    action = EndomorphismAction(psi.space, numeric_matrix('projection', projection))
    return (
        ClauseSpec(
            'interior', action, 'covariant_d', psi, sigma=theta,
            operator_args={'connection': connection_on(chart, connection, psi.space)},
        ),
    )


@register(
    'autoparallel_valued_form', 'psi is autoparallel: i(psi~) D psi (x) phi = 0',
    Parameter('psi', FORM), Parameter('product', STRING, 'symmetrized'), Parameter('connection', CONNECTION, FLAT),
)
def autoparallel_valued_form(chart, psi, product, connection):
    try:
        phi = VALUE_MAPS[product](psi.space)
    except KeyError:
        raise ParameterError(f"Unknown product '{product}' (known: {', '.join(VALUE_MAPS)})") from None
    return (
        ClauseSpec(
            'interior_after_tilde', phi, 'covariant_d', psi, derive=IDENTITY,
            operator_args={'connection': connection_on(chart, connection, psi.space)},
        ),
    )


@register(
    'autoparallel_vector', 'u is autoparallel for the Levi-Civita connection: nabla_u u = 0',
    Parameter('u', VECTOR_KIND),
)
def autoparallel_vector(chart, u):
    tangent = ValueSpace.tangent(chart)
    return (
        ClauseSpec(
            'interior', FunctionProduct(tangent), 'covariant_d', tangent_function(chart, u), derive=VECTOR,
            operator_args={'connection': christoffels_from_metric(chart)},
        ),
    )


@register(
    'null_autoparallel', 'null field u: u^mu (d u~)_{mu nu} = 0 and u.u = 0',
    Parameter('u', VECTOR_KIND),
)
def null_autoparallel(chart, u):
    u_flat = plain(one_form(chart, lowered(chart, u)))
    return (
        ClauseSpec('interior', FunctionProduct(), 'd', u_flat, derive=TILDE, label='autoparallel'),
        ClauseSpec('metric_pairing', FunctionProduct(), 'identity', u_flat, derive=IDENTITY, label='null'),
    )


@register(
    'mass_energy', 'continuity and momentum: div(rho u) = 0 and div(rho u u) = 0',
    Parameter('u', VECTOR_KIND), Parameter('rho', SCALAR),
)
def mass_energy(chart, u, rho):
    g = constant_metric(chart, 'mass_energy')
    u_flat = lowered(chart, u)
    tangent = ValueSpace.tangent(chart)
    current = hodge(one_form(chart, [mul(rho, c) for c in u_flat]), g)
    flux = {
        label: hodge(one_form(chart, [mul(mul(rho, u[mu]), c) for c in u_flat]), g)
        for mu, label in enumerate(tangent.labels)
    }
    return (
        ClauseSpec('scalar_multiply', FunctionProduct(), 'd', plain(current), sigma=unit(chart.dim), label='continuity'),
        ClauseSpec(
            'scalar_multiply', FunctionProduct(tangent), 'd',
            ValuedForm.build(chart.dim, chart.dim - 1, tangent, flux), sigma=unit(chart.dim), label='momentum',
        ),
    )


# Electromagnetism

@register(
    'maxwell_vacuum', 'vacuum Maxwell equations: d(F (x) e1 + *F (x) e2) = 0',
    Parameter('F', FORM),
)
def maxwell_vacuum(chart, F):
    omega = maxwell_form(chart, F, 'maxwell_vacuum')
    return (ClauseSpec('scalar_multiply', FunctionProduct(MAXWELL_SPACE), 'd', omega, sigma=unit(chart.dim)),)


@register(
    'maxwell_currents', 'Maxwell equations with currents: d Omega = m (x) e1 + j (x) e2',
    Parameter('F', FORM), Parameter('j', FORM), Parameter('m', FORM, None),
)
def maxwell_currents(chart, F, j, m):
    omega = maxwell_form(chart, F, 'maxwell_currents')
    parts = {'e2': plain_part(j, 'j', 3)}
    if m is not None:
        parts['e1'] = plain_part(m, 'm', 3)
    rhs = ValuedForm.build(chart.dim, 3, MAXWELL_SPACE, parts)
    return (
        ClauseSpec('scalar_multiply', FunctionProduct(MAXWELL_SPACE), 'd', omega, sigma=unit(chart.dim), rhs=rhs),
    )


@register(
    'ext_maxwell_vacuum', 'extended vacuum Maxwell equations: i(Omega~) d Omega on the symmetrized product',
    Parameter('F', FORM),
)
def ext_maxwell_vacuum(chart, F):
    omega = maxwell_form(chart, F, 'ext_maxwell_vacuum')
    return (ClauseSpec('interior_after_tilde', SymmetrizedProduct(MAXWELL_SPACE), 'd', omega, derive=IDENTITY),)


@register(
    'ext_maxwell_currents', 'extended Maxwell equations with four current 1-forms J_a',
    Parameter('F', FORM), Parameter('J', FORMS), Parameter('symmetrized_rhs', BOOL, False),
)
def ext_maxwell_currents(chart, F, J, symmetrized_rhs):
    if len(J) != 4:
        raise ParameterError(f"ext_maxwell_currents needs four currents, got {len(J)}")
    omega = maxwell_form(chart, F, 'ext_maxwell_currents')
    g = constant_metric(chart, 'ext_maxwell_currents')
    field, dual = omega.part('e1'), omega.part('e2')
    raised = [musical_tilde(plain_part(current, 'J', 1), g) for current in J]
    phi = SymmetrizedProduct(MAXWELL_SPACE)
    rhs = ValuedForm.build(chart.dim, 1, phi.target, {
        'e1∨e1': interior(raised[0], field),
        'e2∨e2': interior(raised[1], dual if symmetrized_rhs else field),
        'e1∨e2': interior(raised[2], field) + interior(raised[3], dual),
    })
    return (ClauseSpec('interior_after_tilde', phi, 'd', omega, derive=IDENTITY, rhs=rhs),)


@register(
    'pfaff_currents', 'completely integrable Pfaff system of currents: d J_a ^ J_a ^ J_b = 0',
    Parameter('J', FORMS),
)
def pfaff_currents(chart, J):
    tensors = [plain_part(current, 'J', 1) for current in J]
    if len(tensors) < 2:
        raise ParameterError("pfaff_currents needs at least two currents")
    return tuple(
        ClauseSpec(
            'wedge', FunctionProduct(), 'd', J[a], sigma=plain(wedge(tensors[a], tensors[b])),
            label=f"[{a + 1},{b + 1}]",
        )
        for a, b in permutations(range(len(tensors)), 2)
    )


# Gauge fields

@register(
    'yang_mills', 'Yang-Mills equations: D *Omega = 0',
    Parameter('omega', FORM),
)
def yang_mills(chart, omega):
    g = constant_metric(chart, 'yang_mills')
    connection = LieConnection(omega)
    dual = star(curvature(connection), g)
    return (
        ClauseSpec(
            'scalar_multiply', FunctionProduct(omega.space), 'covariant_d', dual, sigma=unit(chart.dim),
            operator_args={'connection': connection},
        ),
    )


@register(
    'bianchi', 'Bianchi identity: D Omega = 0',
    Parameter('omega', FORM), Parameter('Omega', FORM, None),
)
def bianchi(chart, omega, Omega):
    connection = LieConnection(omega)
    field = curvature(connection) if Omega is None else Omega
    return (
        ClauseSpec(
            'scalar_multiply', FunctionProduct(omega.space), 'covariant_d', field, sigma=unit(chart.dim),
            operator_args={'connection': connection},
        ),
    )


def extended_yang_mills(phi, psi, omega):
    return (
        ClauseSpec(
            'interior_after_tilde', phi, 'covariant_d', psi, derive=IDENTITY,
            operator_args={'connection': lie_connection(omega)},
        ),
    )


@register(
    'ext_yang_mills_bracket', 'extended Yang-Mills: i(psi^i~) D psi^j (x) [E_i, E_j] = 0',
    Parameter('psi', FORM), Parameter('omega', FORM, None), Parameter('expand', BOOL, False),
)
def ext_yang_mills_bracket(chart, psi, omega, expand):
    return extended_yang_mills(FormalBracket(psi.space, expand=expand), psi, omega)


@register(
    'ext_yang_mills_diagonal', 'extended Yang-Mills with f(E_i, E_i) = E_i',
    Parameter('psi', FORM), Parameter('omega', FORM, None),
)
def ext_yang_mills_diagonal(chart, psi, omega):
    return extended_yang_mills(DiagonalMap(psi.space), psi, omega)


@register(
    'ext_yang_mills_sym', 'extended Yang-Mills on the symmetrized product: i(psi^i~) d psi^j (x) E_i v E_j = 0',
    Parameter('psi', FORM), Parameter('omega', FORM, None),
)
def ext_yang_mills_sym(chart, psi, omega):
    return extended_yang_mills(SymmetrizedProduct(psi.space), psi, omega)


# Gravity and quantum mechanics

@register(
    'ricci_flat', 'vacuum Einstein equations: Ric(R(g)) = 0',
    Parameter('metric', CHART),
)
def ricci_flat(chart, metric):
    return (
        ClauseSpec(
            'trace', RicciContraction(metric), 'riemann', MetricField(metric), sigma=inverse_metric_field(metric),
        ),
    )


@register(
    'schrodinger', 'Schrodinger equation: i hbar d_t psi - H psi = 0 (time is the last coordinate)',
    Parameter('psi', SCALAR), Parameter('potential', SCALAR, 0), Parameter('hbar', NUMBER, 1.0),
    Parameter('mass', NUMBER, 1.0),
)
def schrodinger(chart, psi, potential, hbar, mass):
    hamiltonian = HamiltonianSpec(hbar=hbar, mass=mass, potential=potential)
    return (
        ClauseSpec(
            'scalar_multiply', FunctionProduct(), 'schrodinger', scalar_form(chart, psi), sigma=unit(chart.dim),
            operator_args={'hamiltonian': hamiltonian},
        ),
    )


@register(
    'dirac', 'Dirac equation: (i gamma^mu (d_mu + i e A_mu) -/+ m) psi = 0',
    Parameter('psi', SCALARS), Parameter('mass', NUMBER, 0.0), Parameter('sign', STRING, '-'),
    Parameter('charge', NUMBER, 0.0), Parameter('potential', FORM, None),
)
def dirac(chart, psi, mass, sign, charge, potential):
    if len(psi) != 4:
        raise ParameterError(f"A Dirac spinor has four components, got {len(psi)}")
    eta = constant_metric(chart, 'dirac')
    gammas = GammaSystem(
        eta, mass=mass, sign=sign, charge=charge,
        potential=None if potential is None else plain_part(potential, 'potential', 1),
    )
    spinor = ValuedForm.from_scalars(chart.dim, SPINOR, dict(zip(SPINOR.labels, psi)))
    return (
        ClauseSpec(
            'metric_pairing', DiracPairing(SPINOR), 'dirac', spinor, sigma=gamma_form(gammas),
            operator_args={'gammas': gammas},
        ),
    )
