from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.exceptions import DegreeError, DimensionError
from exterior.algebra import hodge, interior, musical_tilde
from exterior.models import CONTRAVARIANT, AlternatingTensor, Chart, MetricSpec

from .models import LieStructure, ValuedForm, ValueSpace, validate_lie
from .pairings import PAIRINGS, as_multivector, lift_pointwise, star, tilde
from .phi import (
    DiagonalMap, DiracPairing, EndomorphismAction, FormalBracket, FunctionProduct, LieBracket,
    RicciContraction, SymmetrizedProduct, apply_phi,
)

ETA = MetricSpec.minkowski().constant_matrix
SU2 = ValueSpace.numbered('su2', 3, lie=LieStructure.su2())
V = ValueSpace.numbered('V', 2)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def form(*indices, coefficient=1):
    return AlternatingTensor.basis(4, indices, coefficient=coefficient)


class LieStructureTests(SimpleTestCase):

    def test_su2_is_a_lie_algebra(self):
        self.assertTrue(validate_lie(LieStructure.su2()).ok)

    def test_abelian_is_a_lie_algebra(self):
        self.assertTrue(validate_lie(LieStructure.abelian(4)).ok)

    def test_symmetric_constants_report_first_triple(self):
        constants = np.zeros((2, 2, 2), dtype=object)
        constants[0, 1, 0] = constants[1, 0, 0] = 1
        report = validate_lie(LieStructure(constants))
        self.assertFalse(report.ok)
        self.assertEqual((report.violation, report.triple), ('antisymmetry', (0, 1, 0)))
        self.assertEqual(str(report), 'antisymmetry violated at (1, 2, 1)')

    def test_jacobi_violation(self):
        broken = LieStructure.from_brackets(3, [(0, 1, 1, 1), (0, 2, 2, 1), (1, 2, 0, 1)])
        self.assertEqual(validate_lie(broken).violation, 'jacobi')

    def test_float_constants_use_a_tolerance(self):
        noisy = LieStructure.su2().constants.astype(float) * (1 + 1e-14)
        self.assertTrue(validate_lie(LieStructure(noisy)).ok)

    def test_shape(self):
        with self.assertRaises(DimensionError):
            LieStructure(np.zeros((2, 3, 2)))


class ApplyPhiTests(SimpleTestCase):

    def test_su2_bracket(self):
        self.assertEqual(apply_phi(LieBracket(SU2), {'e1': 1}, {'e2': 1}), {'e3': 1})

    def test_diagonal(self):
        self.assertEqual(apply_phi(DiagonalMap(SU2), {'e1': 1}, {'e2': 1}), {})
        self.assertEqual(apply_phi(DiagonalMap(SU2), {'e1': 1}, {'e1': 1}), {'e1': 1})

    def test_symmetrized_coefficients(self):
        result = apply_phi(SymmetrizedProduct(V), [1, 2], [3, 5])
        self.assertEqual(result, {'e1∨e1': 3, 'e1∨e2': 1 * 5 + 2 * 3, 'e2∨e2': 10})

    def test_formal_bracket_labels(self):
        phi = FormalBracket(SU2)
        self.assertEqual(phi.target.labels, ('[e1,e2]', '[e1,e3]', '[e2,e3]'))
        self.assertEqual(apply_phi(phi, {'e3': 1}, {'e1': 1}), {'[e1,e3]': -1})
        self.assertEqual(FormalBracket(SU2, expand=True).target.labels, SU2.labels)

    def test_endomorphism(self):
        phi = EndomorphismAction(V, [[0, 0], [0, 1]])
        self.assertEqual(apply_phi(phi, [1], [4, 7]), {'e2': 7})

    def test_dirac_pairing(self):
        c4 = ValueSpace.numbered('C4', 4)
        phi = DiracPairing(c4)
        self.assertEqual(len(phi.left.labels), 16)
        self.assertEqual(apply_phi(phi, {'ε2⊗e3': 1}, {'e2': 5}), {'e3': 5})
        self.assertEqual(apply_phi(phi, {'ε2⊗e3': 1}, {'e1': 5}), {})

    def test_space_mismatch(self):
        with self.assertRaises(DimensionError):
            apply_phi(LieBracket(SU2), [1, 0], [0, 1, 0])
        with self.assertRaises(DimensionError):
            LieBracket(V)

    @settings(derandomize=True, max_examples=60, deadline=None)
    @given(st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3),
           st.lists(rationals, min_size=3, max_size=3), rationals)
    def test_bilinear(self, a, b, c, k):
        phi = LieBracket(SU2)
        left = apply_phi(phi, [k * x + y for x, y in zip(a, b)], c)
        first, second = apply_phi(phi, a, c), apply_phi(phi, b, c)
        for label in SU2.labels:
            self.assertEqual(left.get(label, 0), k * first.get(label, 0) + second.get(label, 0))

    @settings(derandomize=True, max_examples=60, deadline=None)
    @given(st.lists(rationals, min_size=3, max_size=3))
    def test_bracket_is_alternating(self, a):
        self.assertEqual(apply_phi(LieBracket(SU2), a, a), {})

    @settings(derandomize=True, max_examples=40, deadline=None)
    @given(st.lists(st.lists(st.floats(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3))
    def test_iterated_brackets_satisfy_jacobi(self, triple):
        lie = LieStructure.su2()
        a, b, c = triple
        total = np.zeros(3)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            total += np.array(lie.bracket(x, lie.bracket(y, z)), dtype=float)
        self.assertLess(np.abs(total).max(), 1e-10)


class RicciContractionTests(SimpleTestCase):

    def test_table_agrees_with_basis_images(self):
        chart = Chart('flat', ('x', 'y', 'z', 'xi'), MetricSpec.minkowski())
        phi = RicciContraction(chart)
        self.assertEqual(len(phi.target.labels), 10)
        right = ((2 * 4 + 1) * 4 + 3) * 4 + 3  # R[z,y,xi,xi]
        self.assertEqual(dict(phi.table[2 * 4 + 3, right]), phi.basis_image(2 * 4 + 3, right))
        self.assertEqual(phi.basis_image(2 * 4 + 3, right), {'Ric[y,xi]': 1})
        self.assertNotIn((0, right), phi.table)


class LiftTests(SimpleTestCase):

    def test_extended_maxwell_structure(self):
        f, dual = form(0, 2, coefficient=2) + form(1, 3), form(0, 1, coefficient=3)
        g, h = form(0, 1, 2), form(1, 2, 3, coefficient=-1) + form(0, 2, 3)
        omega = ValuedForm.build(4, 2, V, {'e1': f, 'e2': dual})
        d_omega = ValuedForm.build(4, 3, V, {'e1': g, 'e2': h})
        phi = SymmetrizedProduct(V)
        result = lift_pointwise(PAIRINGS['interior_after_tilde'], phi, omega, d_omega, ETA)

        def sub(a, b):
            return interior(musical_tilde(a, ETA), b)

        self.assertEqual(phi.target.labels, ('e1∨e1', 'e1∨e2', 'e2∨e2'))
        self.assertEqual(result.part('e1∨e1'), sub(f, g))
        self.assertEqual(result.part('e2∨e2'), sub(dual, h))
        self.assertEqual(result.part('e1∨e2'), sub(f, h) + sub(dual, g))

    def test_abelian_bracket_kills_the_wedge(self):
        abelian = ValueSpace.numbered('u1^2', 2, lie=LieStructure.abelian(2))
        a = ValuedForm.build(4, 1, abelian, {'e1': form(0), 'e2': form(1)})
        result = lift_pointwise(PAIRINGS['wedge'], LieBracket(abelian), a, a)
        self.assertTrue(result.is_zero())
        self.assertEqual(result.degree, 2)

    def test_product_with_one_is_the_identity(self):
        one = ValuedForm.from_tensor(AlternatingTensor.scalar(4, 1))
        d_omega = ValuedForm.build(4, 3, V, {'e1': form(0, 1, 2), 'e2': form(0, 1, 3, coefficient=5)})
        result = lift_pointwise(PAIRINGS['scalar_multiply'], FunctionProduct(V), one, d_omega)
        self.assertEqual(result, d_omega)

    def test_degree_checked_before_evaluation(self):
        top = ValuedForm.from_tensor(form(0, 1, 2, 3))
        with self.assertRaises(DegreeError):
            lift_pointwise(PAIRINGS['wedge'], FunctionProduct(), top, top)

    def test_space_mismatch(self):
        a = ValuedForm.build(4, 1, V, {'e1': form(0)})
        with self.assertRaises(DimensionError):
            lift_pointwise(PAIRINGS['wedge'], LieBracket(SU2), a, a)


class ValuedFormTests(SimpleTestCase):

    def test_unknown_label(self):
        with self.assertRaises(DimensionError):
            ValuedForm(4, 1, V, {'e7': form(0)})

    def test_part_degree_must_match(self):
        with self.assertRaises(DegreeError):
            ValuedForm(4, 1, V, {'e1': form(0, 1)})

    def test_star_and_tilde_act_per_component(self):
        omega = ValuedForm.build(4, 2, V, {'e1': form(0, 1), 'e2': form(2, 3)})
        self.assertEqual(star(omega, ETA).part('e1'), hodge(form(0, 1), ETA))
        self.assertEqual(tilde(omega, ETA).variance, CONTRAVARIANT)
        self.assertEqual(tilde(tilde(omega, ETA), ETA), omega)

    def test_tangent_function_as_vector(self):
        chart = Chart('flat', ('x', 'y', 'z', 'xi'), MetricSpec.minkowski())
        u = ValuedForm.from_scalars(4, ValueSpace.tangent(chart), {'z': Fraction(1, 2), 'xi': 1})
        vector = as_multivector(u).part('1')
        self.assertEqual(vector.components, {(2,): Fraction(1, 2), (3,): 1})
        self.assertEqual(vector.variance, CONTRAVARIANT)

    def test_magnitudes_cover_every_label(self):
        omega = ValuedForm.build(4, 1, V, {'e2': form(0, coefficient=-3) + form(1)})
        self.assertEqual(omega.magnitudes(), {'e1': 0.0, 'e2': 3.0})
