from fractions import Fraction
from unittest import TestCase

from pydantic import ValidationError

from twists.borel import BorelElement
from twists.exceptions import DimensionMismatchError
from twists.exceptions import UnsupportedMethodError
from twists.momentum import DeformationContext
from twists.momentum import MomentumVector
from twists.realizations import RealizationSpec
from twists.scalars import I
from twists.scalars import TruncPoly
from twists.weyl import commutator

U_VALUES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(-1, 3))
ORDER = 2


def _spec(u=0, v="1,0", order=ORDER):
    return RealizationSpec(u=u, v=v, order=order)


class RealizationSpecTests(TestCase):
    def test_parses_strings(self):
        spec = _spec(u="1/2", v="1, 1/3")
        self.assertEqual(Fraction(1, 2), spec.u)
        self.assertEqual((Fraction(1), Fraction(1, 3)), spec.v)
        self.assertEqual(2, spec.dim)

    def test_rejects_bad_vectors(self):
        for v in ("0,0", "1"):
            with self.subTest(v=v):
                with self.assertRaises(ValidationError):
                    _spec(v=v)

    def test_rejects_bad_order(self):
        with self.assertRaises(ValidationError):
            _spec(order=0)

    def test_generator_images_close(self):
        spec = _spec(v="1,2")
        A, D, E = spec.A(), spec.D(), spec.p(0)
        self.assertEqual(A, commutator(A, D))
        self.assertEqual(E, commutator(E, D))
        self.assertTrue(commutator(A, E).is_zero())


class BorelToWeylTests(TestCase):
    @property
    def _cut(self):
        from twists.realizations import borel_to_weyl

        return borel_to_weyl

    def test_homomorphism(self):
        spec = _spec(v="1,2", order=3)
        A, E, D = (BorelElement.generator(n, 3) for n in "AED")
        elements = (A, E, D, D * A + E, A * A * D - E * D)
        for x in elements:
            for y in elements:
                with self.subTest(x=str(x), y=str(y)):
                    self.assertEqual(
                        self._cut(x, spec) * self._cut(y, spec), self._cut(x * y, spec)
                    )

    def test_component_selects_momentum(self):
        spec = _spec(v="1,2")
        E = BorelElement.generator("E", ORDER)
        self.assertEqual(spec.p(1), self._cut(E, spec, 1))
        with self.assertRaises(DimensionMismatchError):
            self._cut(E, spec, 2)

    def test_order_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            self._cut(BorelElement.one(ORDER + 1), _spec())


class ClosedFormCoordinateTests(TestCase):
    def test_u0_xhat(self):
        from twists.realizations import realize_xhat

        spec = _spec(0, "1,2")
        for mu, xh in enumerate(realize_xhat(spec)):
            with self.subTest(mu=mu):
                self.assertEqual(spec.x(mu) + spec.D().scale(spec.a(mu)).scale(I), xh)

    def test_u1_xhat(self):
        from twists.realizations import realize_xhat

        spec = _spec(1, "1,2")
        for mu, xh in enumerate(realize_xhat(spec)):
            with self.subTest(mu=mu):
                self.assertEqual(spec.x(mu) * (spec.one() - spec.A()), xh)

    def test_u0_yhat(self):
        from twists.realizations import realize_yhat

        spec = _spec(0, "1,2")
        for mu, yh in enumerate(realize_yhat(spec)):
            with self.subTest(mu=mu):
                self.assertEqual(spec.x(mu) * (spec.one() + spec.A()), yh)

    def test_phi_at_u0(self):
        from twists.realizations import phi_matrix

        spec = _spec(0, "1,2")
        phi = phi_matrix(spec)
        self.assertEqual(spec.one() - spec.p(0).scale(spec.a(0)), phi[0][0])
        self.assertEqual(-spec.p(0).scale(spec.a(1)), phi[0][1])

    def test_kappa_minkowski(self):
        from twists.realizations import verify_kappa_minkowski

        vectors = {2: ("1,0", "1,-1/2"), 3: ("0,0,1", "1,2,3"), 4: ("1,0,0,0", "1/2,0,-1,2")}
        for dim, vs in vectors.items():
            for v in vs:
                for u in U_VALUES:
                    with self.subTest(dim=dim, v=v, u=u):
                        report = verify_kappa_minkowski(_spec(u, v))
                        self.assertTrue(report.passed, str(report))
                        self.assertEqual(dim, report.dim)
                        self.assertEqual("kappa-minkowski", report.identity)

    def test_kappa_minkowski_at_order_four(self):
        from twists.realizations import verify_kappa_minkowski

        for u in (Fraction(0), Fraction(1, 2), Fraction(1)):
            with self.subTest(u=u):
                report = verify_kappa_minkowski(_spec(u, "1,-1/2", order=4))
                self.assertTrue(report.passed, str(report))

    def test_deformed_coordinates_do_not_commute(self):
        from twists.realizations import realize_xhat

        xh = realize_xhat(_spec(Fraction(1, 2), "1,0"))
        self.assertFalse(commutator(xh[0], xh[1]).is_zero())


class ExtractionTests(TestCase):
    def test_from_twist_and_coproduct(self):
        from twists.realizations import verify_realization

        for u in U_VALUES:
            for v in ("1,0", "1,-1/2"):
                with self.subTest(u=u, v=v):
                    report = verify_realization(_spec(u, v))
                    self.assertTrue(report.passed, str(report))

    def test_routes_agree_at_order_four(self):
        from twists.realizations import extract_xhat_from_coproduct
        from twists.realizations import extract_xhat_from_twist
        from twists.realizations import verify_realization

        for u in (Fraction(0), Fraction(1, 2), Fraction(1)):
            with self.subTest(u=u):
                spec = _spec(u, "1,-1/2", order=4)
                self.assertEqual(extract_xhat_from_twist(spec), extract_xhat_from_coproduct(spec))
                report = verify_realization(spec)
                self.assertTrue(report.passed, str(report))
                self.assertEqual(4, report.order)

    def test_u0_twist_route(self):
        from twists.realizations import extract_xhat_from_twist
        from twists.realizations import realize_xhat

        spec = _spec(0, "1,2", order=3)
        self.assertEqual(realize_xhat(spec), extract_xhat_from_twist(spec))

    def test_family_order_mismatch(self):
        from twists.realizations import extract_xhat_from_twist
        from twists.twist import build_twist

        with self.assertRaises(DimensionMismatchError):
            extract_xhat_from_twist(_spec(), build_twist(0, ORDER + 1))

    def test_corrupted_twist_is_detected(self):
        from twists.realizations import verify_realization
        from twists.twist import build_twist

        family = build_twist(0, ORDER)
        broken = family.with_twist(family.F.drop_term(((1, 0, 0), (0, 0, 1))))
        self.assertFalse(verify_realization(_spec(0), broken).passed)


class AdxCoproductTests(TestCase):
    def test_reproduces_coproduct(self):
        from twists.realizations import verify_adx_coproduct

        for u in U_VALUES:
            with self.subTest(u=u):
                report = verify_adx_coproduct(_spec(u, "1,-1/2"))
                self.assertTrue(report.passed, str(report))

    def test_reproduces_coproduct_at_order_four(self):
        from twists.realizations import verify_adx_coproduct

        for u in (Fraction(0), Fraction(1, 2), Fraction(1)):
            with self.subTest(u=u):
                self.assertTrue(verify_adx_coproduct(_spec(u, "1,2", order=4)).passed)

    def test_result_is_momentum_polynomial(self):
        from twists.realizations import coproduct_from_adx

        delta = coproduct_from_adx(_spec(Fraction(1, 2)), 0)
        self.assertTrue(delta.is_momentum_polynomial())
        self.assertEqual(4, delta.dim)

    def test_needs_order_two(self):
        from twists.realizations import verify_adx_coproduct

        with self.assertRaises(ValueError):
            verify_adx_coproduct(_spec(order=1))

    def test_k_inverse_leading_term(self):
        from twists.realizations import k_inverse_operator

        spec = _spec(0, "1,0", order=1)
        kinv = k_inverse_operator(spec)
        expected = spec.p(0) + (spec.p(0) * spec.a_dot_p()).scale(Fraction(1, 2))
        self.assertEqual(expected, kinv[0])


class NormalOrderedTwistTests(TestCase):
    k = MomentumVector.parse("1,2")
    q = MomentumVector.parse("3,-1")

    def _ctx(self, u):
        return DeformationContext.build(u, "1/10,0")

    def test_u0_legs(self):
        from twists.realizations import normal_ordered_inverse_twist_legs

        left, right = normal_ordered_inverse_twist_legs(0, self.k, self.q, self._ctx(0))
        self.assertEqual(self.k, left)
        self.assertEqual(MomentumVector.parse("27/10,-9/10"), right)

    def test_actions(self):
        from twists.realizations import normal_ordered_inverse_twist_action

        self.assertEqual(
            MomentumVector.parse("37/10,11/10"),
            normal_ordered_inverse_twist_action(0, self.k, self.q, self._ctx(0)),
        )
        self.assertEqual(
            MomentumVector.parse("43/10,8/5"),
            normal_ordered_inverse_twist_action(1, self.k, self.q, self._ctx(1)),
        )

    def test_other_u_unsupported(self):
        from twists.realizations import normal_ordered_inverse_twist_legs

        half = Fraction(1, 2)
        with self.assertRaises(UnsupportedMethodError):
            normal_ordered_inverse_twist_legs(half, self.k, self.q, self._ctx(half))

    def test_series_legs_at_u0(self):
        from twists.realizations import normal_ordered_twist_exponent

        left, right = normal_ordered_twist_exponent(_spec(0), self.k, self.q)
        self.assertEqual((TruncPoly([1], ORDER), TruncPoly([2], ORDER)), left)
        self.assertEqual((TruncPoly([3, -3], ORDER), TruncPoly([-1, 1], ORDER)), right)

    def test_series_legs_evaluate_to_closed_forms(self):
        from twists.realizations import normal_ordered_inverse_twist_legs
        from twists.realizations import normal_ordered_twist_exponent

        tenth = Fraction(1, 10)
        for u in (0, 1):
            with self.subTest(u=u):
                legs = normal_ordered_twist_exponent(_spec(u), self.k, self.q, t=u)
                evaluated = tuple(
                    MomentumVector(tuple(c.evaluate(tenth).as_fraction() for c in leg)) for leg in legs
                )
                expected = normal_ordered_inverse_twist_legs(u, self.k, self.q, self._ctx(u))
                self.assertEqual(expected, evaluated)

    def test_twist_exponent_reproduces_deformed_sum(self):
        from twists.realizations import verify_normal_ordered_twist

        for u in U_VALUES:
            for v in ("1,0", "1,-1/2"):
                with self.subTest(u=u, v=v):
                    report = verify_normal_ordered_twist(_spec(u, v, order=4), self.k, self.q)
                    self.assertTrue(report.passed, str(report))
                    self.assertEqual("normal-twist", report.identity)

    def test_interior_shift_has_higher_orders(self):
        from twists.realizations import twist_momentum_shift

        shift = twist_momentum_shift(_spec(Fraction(1, 2), order=4), self.k, self.q)
        self.assertGreater(shift[0].degree, 1)

    def test_mutated_twist_is_detected(self):
        from twists.realizations import verify_normal_ordered_twist
        from twists.twist import assemble_twist

        half = Fraction(1, 2)
        family = assemble_twist(half, ORDER, (1, -1, 1))
        report = verify_normal_ordered_twist(_spec(half), self.k, self.q, family)
        self.assertFalse(report.passed)
        self.assertIn("exponent0 - D", report.residual)

    def test_needs_rational_momenta(self):
        from twists.realizations import twist_momentum_shift

        with self.assertRaises(ValueError):
            twist_momentum_shift(_spec(), MomentumVector.from_array([1.0, 2.0]), self.q)
        with self.assertRaises(DimensionMismatchError):
            twist_momentum_shift(_spec(), MomentumVector.parse("1,2,3"), self.q)
