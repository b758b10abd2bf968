"""
Schrodinger and Dirac operators.

The Schrodinger operator acts on a complex function whose last coordinate is
time. The Dirac operator turns a C^4-valued function psi into the C^4-valued
1-form

    (D psi)_nu = i d_nu psi - e A_nu psi + c gamma_nu^-1 psi,

where c is GammaSystem.mass_coefficient. Pairing it with the gamma 1-form
gamma_mu dx^mu through eta^{mu nu} gives i gamma^nu d_nu psi - e gamma^nu A_nu psi - 2c psi.
"""

import numpy as np

from core.exceptions import DimensionError
from exterior.models import AlternatingTensor
from fields.calculus import add, differentiate, mul, sub
from fields.models import ZERO, Const, as_expr
from valued.models import COMPLEX, ValuedForm, ValueSpace
from valued.phi import endomorphism_space

SPINOR = ValueSpace.numbered('C4', 4, field=COMPLEX)


def laplacian(expr, spatial):
    total = ZERO
    for axis in range(spatial):
        total = add(total, differentiate(differentiate(expr, axis), axis))
    return total


def schrodinger_apply(hamiltonian, psi, dim):
    """i hbar d_t psi + hbar^2/2m Laplacian(psi) - V psi, with t the last coordinate."""
    if dim < 2:
        raise DimensionError("The Schrodinger operator needs at least one spatial coordinate and time")
    psi = as_expr(psi)
    hbar, mass = hamiltonian.hbar, hamiltonian.mass
    kinetic = mul(Const(complex(hbar ** 2 / (2 * mass))), laplacian(psi, dim - 1))
    time = mul(Const(1j * hbar), differentiate(psi, dim - 1))
    return sub(add(time, kinetic), mul(hamiltonian.potential, psi))


def schrodinger_operator(hamiltonian, form):
    """The Schrodinger operator on a complex degree-0 form with trivial values."""
    if form.degree != 0 or form.space.dim != 1:
        raise DimensionError("The Schrodinger operator acts on a scalar wave function")
    label = form.space.labels[0]
    psi = form.scalar(label)
    return ValuedForm.from_scalars(form.dim, form.space, {label: schrodinger_apply(hamiltonian, psi, form.dim)})


def _components(form):
    if form.degree != 0 or form.space.dim != 4:
        raise DimensionError("The Dirac operator acts on C^4-valued functions")
    return tuple(as_expr(form.scalar(label)) for label in form.space.labels)


def _matrix_times(matrix, vector):
    out = []
    for row in matrix:
        total = ZERO
        for coefficient, component in zip(row, vector):
            if coefficient != 0:
                total = add(total, mul(Const(complex(coefficient)), component))
        out.append(total)
    return out


def _potential(gammas, mu):
    if gammas.potential is None:
        return ZERO
    return as_expr(gammas.potential.get((mu,)))


def dirac_operator(gammas, form):
    """(D psi) as a C^4-valued 1-form on the 4-chart."""
    if form.dim != gammas.dim:
        raise DimensionError(f"Gamma matrices for dimension {gammas.dim}, chart of dimension {form.dim}")
    psi = _components(form)
    coefficient = gammas.mass_coefficient
    parts = {label: {} for label in form.space.labels}
    for nu in range(form.dim):
        mass_term = _matrix_times(coefficient * gammas.inverses[nu], psi) if coefficient else [ZERO] * 4
        potential = _potential(gammas, nu)
        for i, label in enumerate(form.space.labels):
            value = mul(Const(1j), differentiate(psi[i], nu))
            if gammas.charge:
                value = sub(value, mul(mul(Const(complex(gammas.charge)), potential), psi[i]))
            value = add(value, mass_term[i])
            parts[label][(nu,)] = value
    tensors = {label: AlternatingTensor.build(form.dim, 1, components) for label, components in parts.items()}
    return ValuedForm.build(form.dim, 1, form.space, tensors)


def gamma_form(gammas, space=SPINOR):
    """gamma_mu dx^mu with values in L(C^4); the part on 'ε<i>⊗e<j>' is gamma_mu[j, i] dx^mu."""
    target = endomorphism_space(space)
    parts = {}
    for i, j in np.ndindex(4, 4):
        components = {(mu,): gammas.matrices[mu][j, i] for mu in range(gammas.dim)}
        components = {key: complex(value) for key, value in components.items() if value != 0}
        if components:
            parts[f"ε{i + 1}⊗{space.labels[j]}"] = AlternatingTensor.build(gammas.dim, 1, components)
    return ValuedForm.build(gammas.dim, 1, target, parts)


def dirac_apply(gammas, psi):
    """
    The reduced residual i gamma^mu (d_mu + i e A_mu) psi -/+ m psi computed
    directly from the raised matrices, as four scalar expressions.
    """
    psi = tuple(as_expr(component) for component in psi)
    out = [ZERO] * 4
    for mu in range(gammas.dim):
        raised = gammas.raised[mu]
        derivative = [mul(Const(1j), differentiate(component, mu)) for component in psi]
        if gammas.charge:
            coupling = mul(Const(complex(gammas.charge)), _potential(gammas, mu))
            derivative = [sub(term, mul(coupling, component)) for term, component in zip(derivative, psi)]
        out = [add(total, term) for total, term in zip(out, _matrix_times(raised, derivative))]
    mass = -2 * gammas.mass_coefficient
    if mass:
        out = [add(total, mul(Const(complex(mass)), component)) for total, component in zip(out, psi)]
    return tuple(out)
