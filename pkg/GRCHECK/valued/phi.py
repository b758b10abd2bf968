"""
Bilinear maps phi between value spaces.

Every map is given by the images of basis pairs: `basis_image(i, j)` is the
expansion of phi(E_i, E_j) in the target basis. Everything else (applying to
vectors, lifting to valued forms) is bilinear extension of that table.
"""

from functools import cached_property
from itertools import product

import numpy as np

from core.exceptions import DimensionError

from .models import COMPLEX, TRIVIAL, ValueSpace


class PhiMap:
    name = 'phi'

    def __init__(self, left, right, target):
        self.left = left
        self.right = right
        self.target = target

    def basis_image(self, i, j):
        raise NotImplementedError

    @cached_property
    def table(self):
        """(i, j) -> ((target label, coefficient), ...) for every nonzero image."""
        table = {}
        for i, j in product(range(self.left.dim), range(self.right.dim)):
            image = tuple((label, c) for label, c in self.basis_image(i, j).items() if c != 0)
            if image:
                table[i, j] = image
        return table

    @cached_property
    def left_index(self):
        return {label: i for i, label in enumerate(self.left.labels)}

    @cached_property
    def right_index(self):
        return {label: j for j, label in enumerate(self.right.labels)}

    def __repr__(self):
        return f"{type(self).__name__}({self.left.name} x {self.right.name} -> {self.target.name})"


class FunctionProduct(PhiMap):
    """1 x v -> v: the left factor is a plain function."""
    name = 'product'

    def __init__(self, space=TRIVIAL):
        super().__init__(TRIVIAL, space, space)

    def basis_image(self, i, j):
        return {self.target.labels[j]: 1}


class LieBracket(PhiMap):
    name = 'bracket'

    def __init__(self, space):
        if space.lie is None:
            raise DimensionError(f"Value space {space.name} has no Lie structure")
        super().__init__(space, space, space)

    def basis_image(self, i, j):
        return {self.target.labels[k]: c for a, b, k, c in self.right.lie.nonzero if (a, b) == (i, j)}


class FormalBracket(PhiMap):
    """
    [E_i, E_j] kept as its own basis element, labelled '[Ei,Ej]' for i < j.
    With expand=True it is the ordinary bracket expanded by structure constants.
    """
    name = 'formal_bracket'

    def __init__(self, space, expand=False):
        self.expand = expand
        if expand:
            target = LieBracket(space).target
        else:
            labels = tuple(f"[{a},{b}]" for (i, a), (j, b) in product(enumerate(space.labels), repeat=2) if i < j)
            if not labels:
                raise DimensionError("A formal bracket needs a value space of dimension at least 2")
            target = ValueSpace(f"Λ²{space.name}", labels, space.field)
        super().__init__(space, space, target)

    def basis_image(self, i, j):
        if self.expand:
            return LieBracket(self.left).basis_image(i, j)
        if i == j:
            return {}
        labels = self.left.labels
        if i < j:
            return {f"[{labels[i]},{labels[j]}]": 1}
        return {f"[{labels[j]},{labels[i]}]": -1}


class SymmetrizedProduct(PhiMap):
    """a v b on labels 'Ei∨Ej' (i <= j): coefficient a^i b^j + a^j b^i off the diagonal."""
    name = 'symmetrized'

    def __init__(self, space):
        labels = tuple(
            f"{a}∨{b}" for (i, a), (j, b) in product(enumerate(space.labels), repeat=2) if i <= j
        )
        super().__init__(space, space, ValueSpace(f"{space.name}∨{space.name}", labels, space.field))

    def basis_image(self, i, j):
        low, high = min(i, j), max(i, j)
        return {f"{self.left.labels[low]}∨{self.left.labels[high]}": 1}


class DiagonalMap(PhiMap):
    """f(E_i, E_i) = E_i and f(E_i, E_j) = 0 otherwise."""
    name = 'diagonal'

    def __init__(self, space):
        super().__init__(space, space, space)

    def basis_image(self, i, j):
        return {self.target.labels[i]: 1} if i == j else {}


class EndomorphismAction(PhiMap):
    """phi(P, E_i) = P(E_i) for a fixed r x r matrix P acting on the right factor."""
    name = 'endomorphism'

    def __init__(self, space, matrix):
        matrix = np.asarray(matrix)
        if matrix.shape != (space.dim, space.dim):
            raise DimensionError(f"Endomorphism of shape {matrix.shape} on a {space.dim}-dimensional space")
        self.matrix = matrix
        super().__init__(TRIVIAL, space, space)

    def basis_image(self, i, j):
        return {self.target.labels[k]: self.matrix[k, j] for k in range(self.target.dim)}


def endomorphism_space(space):
    """L(V) = V* (x) V with labels 'ε<i>⊗<label_j>'."""
    labels = tuple(f"ε{i + 1}⊗{b}" for i, b in product(range(space.dim), space.labels))
    return ValueSpace(f"L({space.name})", labels, COMPLEX)


class DiracPairing(PhiMap):
    """phi(ε^i (x) e_j, e_k) = <ε^i, e_k> e_j."""
    name = 'dirac'

    def __init__(self, space):
        super().__init__(endomorphism_space(space), space, space)

    def basis_image(self, a, k):
        i, j = divmod(a, self.right.dim)
        return {self.target.labels[j]: 1} if i == k else {}


def inverse_metric_space(chart):
    names = chart.coord_names
    return ValueSpace('g^-1', tuple(f"g^[{a},{b}]" for a, b in product(names, repeat=2)))


def riemann_space(chart):
    names = chart.coord_names
    return ValueSpace('Riem', tuple(f"R[{a},{s},{b},{m}]" for a, s, b, m in product(names, repeat=4)))


def ricci_space(chart):
    names = chart.coord_names
    n = len(names)
    return ValueSpace('Ric', tuple(f"Ric[{names[s]},{names[m]}]" for s in range(n) for m in range(s, n)))


class RicciContraction(PhiMap):
    """(g^ab, R_{a s b m}) -> g^ab R_{a s b m} on the upper triangle s <= m."""
    name = 'trace'

    def __init__(self, chart):
        self.n = chart.dim
        super().__init__(inverse_metric_space(chart), riemann_space(chart), ricci_space(chart))

    def basis_image(self, left, right):
        n = self.n
        a, b = divmod(left, n)
        a2, rest = divmod(right, n ** 3)
        s, rest = divmod(rest, n ** 2)
        b2, m = divmod(rest, n)
        if (a, b) != (a2, b2) or s > m:
            return {}
        return {self.target.labels[self._upper_index(s, m)]: 1}

    def _upper_index(self, s, m):
        n = self.n
        return s * n - s * (s - 1) // 2 + (m - s)

    @cached_property
    def table(self):
        n = self.n
        table = {}
        for a, b, s in product(range(n), repeat=3):
            for m in range(s, n):
                right = ((a * n + s) * n + b) * n + m
                table[a * n + b, right] = ((self.target.labels[self._upper_index(s, m)], 1),)
        return table


PHI_MAPS = {
    'product': FunctionProduct,
    'bracket': LieBracket,
    'formal_bracket': FormalBracket,
    'symmetrized': SymmetrizedProduct,
    'diagonal': DiagonalMap,
}


def _as_coefficients(vector, space):
    if isinstance(vector, dict):
        coefficients = [0] * space.dim
        for label, value in vector.items():
            coefficients[space.index(label)] = value
        return coefficients
    coefficients = list(vector)
    if len(coefficients) != space.dim:
        raise DimensionError(f"Expected {space.dim} coefficients for {space.name}, got {len(coefficients)}")
    return coefficients


def apply_phi(phi, a, b):
    """
    phi(a, b) for value vectors given as label -> coefficient dicts or as
    coefficient sequences in basis order. Returns the nonzero target
    coefficients as a dict.
    """
    left = _as_coefficients(a, phi.left)
    right = _as_coefficients(b, phi.right)
    out = {}
    for (i, j), image in phi.table.items():
        weight = left[i] * right[j]
        if weight == 0:
            continue
        for label, c in image:
            out[label] = out.get(label, 0) + c * weight
    return {label: value for label, value in out.items() if value != 0}
