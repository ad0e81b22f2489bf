from unittest import TestCase

from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from twists.exceptions import DimensionMismatchError
from twists.exceptions import TruncationMismatchError
from twists.scalars import I
from twists.scalars import TruncPoly
from twists.weyl import WeylElement
from twists.weyl import act
from twists.weyl import commutator

DIM = 2
ORDER = 1

exponents = st.tuples(st.integers(0, 2), st.integers(0, 1))
weyl_keys = st.tuples(exponents, exponents)
weyl_elements = st.dictionaries(
    weyl_keys, st.integers(-3, 3).filter(bool), max_size=3
).map(lambda d: WeylElement(DIM, d, ORDER))
position_polynomials = st.dictionaries(
    exponents.map(lambda e: (e, (0, 0))), st.integers(-3, 3).filter(bool), max_size=3
).map(lambda d: WeylElement(DIM, d, ORDER))


class WeylElementTests(TestCase):
    def _mk_one(self, dim=DIM, order=ORDER):
        return WeylElement.one(dim, order)

    def _xp(self, dim=DIM, order=ORDER):
        xs = [WeylElement.x(mu, dim, order) for mu in range(dim)]
        ps = [WeylElement.p(mu, dim, order) for mu in range(dim)]
        return xs, ps

    def test_canonical_commutator(self):
        (x0, x1), (p0, p1) = self._xp()
        self.assertEqual(x0 * p0 - I, p0 * x0)
        self.assertEqual(self._mk_one().scale(-I), commutator(p0, x0))
        self.assertTrue(commutator(p0, x1).is_zero())
        self.assertTrue(commutator(x0, x1).is_zero())
        self.assertTrue(commutator(p0, p1).is_zero())

    def test_dilatation(self):
        (x0, x1), (p0, p1) = self._xp()
        D = (x0 * p0 + x1 * p1).scale(I)
        self.assertEqual(x0 * D + x0, D * x0)
        self.assertEqual(p0 * D - p0, D * p0)

    def test_render(self):
        (x0, _), (p0, _) = self._xp()
        self.assertEqual("x0 p0", str(x0 * p0))
        self.assertEqual("-i + x0 p0", str(p0 * x0))
        self.assertEqual("(h) p0", str(p0.scale(TruncPoly.h(ORDER))))
        self.assertEqual("0", str(WeylElement.zero(DIM, ORDER)))
        self.assertEqual("x0^2", str(x0 * x0))

    def test_predicates(self):
        (x0, _), (p0, p1) = self._xp()
        self.assertTrue((p0 * p1 + 1).is_momentum_polynomial())
        self.assertFalse((x0 * p0).is_momentum_polynomial())
        self.assertTrue((x0 * x0).is_position_polynomial())
        self.assertEqual(2, (x0 * x0 * p0).x_degree)

    def test_embed(self):
        (x0, _), (_, p1) = self._xp()
        self.assertEqual(WeylElement.x(2, 4, ORDER), x0.embed(4, 2))
        self.assertEqual(WeylElement.p(1, 4, ORDER), p1.embed(4, 0))
        with self.assertRaises(DimensionMismatchError):
            x0.embed(3, 2)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            WeylElement.x(0, 2, ORDER) + WeylElement.x(0, 3, ORDER)
        with self.assertRaises(DimensionMismatchError):
            WeylElement.x(2, 2, ORDER)
        with self.assertRaises(DimensionMismatchError):
            WeylElement(2, {((1,), (0,)): 1}, ORDER)

    def test_order_mismatch(self):
        with self.assertRaises(TruncationMismatchError):
            WeylElement.x(0, 2, 1) * WeylElement.x(0, 2, 2)
        with self.assertRaises(TruncationMismatchError):
            WeylElement(2, {((1, 0), (0, 0)): TruncPoly.one(3)}, 1)

    def test_deformation_parameter_truncates(self):
        (_, _), (p0, _) = self._xp()
        h = TruncPoly.h(ORDER)
        self.assertTrue(p0.scale(h * h).is_zero())

    @given(weyl_elements, weyl_elements, weyl_elements)
    @settings(max_examples=40, deadline=None)
    def test_associative(self, a, b, c):
        self.assertEqual((a * b) * c, a * (b * c))

    @given(weyl_elements, weyl_elements)
    @settings(max_examples=40, deadline=None)
    def test_bracket_antisymmetric(self, a, b):
        self.assertEqual(-commutator(b, a), commutator(a, b))


class ActionTests(TestCase):
    def test_derivative(self):
        x0 = WeylElement.x(0, DIM, ORDER)
        p0 = WeylElement.p(0, DIM, ORDER)
        self.assertEqual(x0.scale(-2 * I), act(p0, x0 * x0))
        self.assertTrue(act(p0, WeylElement.x(1, DIM, ORDER)).is_zero())

    def test_multiplication(self):
        x0 = WeylElement.x(0, DIM, ORDER)
        x1 = WeylElement.x(1, DIM, ORDER)
        self.assertEqual(x0 * x1, act(x1, x0))

    def test_requires_position_polynomial(self):
        p0 = WeylElement.p(0, DIM, ORDER)
        with self.assertRaises(ValueError):
            act(p0, p0)

    @given(weyl_elements, weyl_elements, position_polynomials)
    @settings(max_examples=40, deadline=None)
    def test_is_module_action(self, a, b, f):
        self.assertEqual(act(a * b, f), act(a, act(b, f)))
