from fractions import Fraction
from unittest import TestCase

from twists.borel import BorelElement
from twists.borel import inverse_series
from twists.borel import log_series
from twists.borel import tensor
from twists.exceptions import UnsupportedMethodError

U_VALUES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(-1, 3))
ORDER = 3
HALF = Fraction(1, 2)


def _gens(order=ORDER):
    return BorelElement.one(order), *(BorelElement.generator(n, order) for n in "AED")


class TwistConstructionTests(TestCase):
    @property
    def _cut(self):
        from twists.twist import build_twist

        return build_twist

    def test_u0_expansion(self):
        one, A, _, D = _gens(order=2)
        A2 = A * A
        expected = (
            tensor(one, one)
            - tensor(A, D)
            + tensor(A2, D).scale(HALF)
            + tensor(A2, D * D).scale(HALF)
        )
        self.assertEqual(expected, self._cut(0, 2).F)

    def test_u1_expansion(self):
        one, A, _, D = _gens(order=2)
        A2 = A * A
        expected = (
            tensor(one, one)
            + tensor(D, A)
            + tensor(D, A2).scale(HALF)
            + tensor(D * D, A2).scale(HALF)
        )
        self.assertEqual(expected, self._cut(1, 2).F)

    def test_special_cases_are_single_exponentials(self):
        from twists.twist import exponential_twist

        for u in (0, 1):
            with self.subTest(u=u):
                self.assertEqual(exponential_twist(u, ORDER), self._cut(u, ORDER).F)

    def test_single_exponential_only_at_endpoints(self):
        from twists.twist import exponential_twist

        with self.assertRaises(UnsupportedMethodError):
            exponential_twist(HALF, ORDER)

    def test_printed_inverse(self):
        for u in U_VALUES:
            with self.subTest(u=u):
                family = self._cut(u, ORDER)
                self.assertEqual(inverse_series(family.F), family.F_inv)

    def test_grade_one_log(self):
        _, A, _, D = _gens()
        for u in U_VALUES:
            with self.subTest(u=u):
                expected = tensor(D, A).scale(u) - tensor(A, D).scale(1 - u)
                self.assertEqual(expected, log_series(self._cut(u, ORDER).F).grade_part(1))

    def test_r_symmetric_log_rendering(self):
        rendered = str(log_series(self._cut(HALF, ORDER).F).grade_part(1))
        self.assertEqual("1/2 D⊗A - 1/2 A⊗D", rendered)

    def test_grade_two_log_at_u0(self):
        _, A, _, D = _gens()
        expected = tensor(A * A, D).scale(HALF)
        self.assertEqual(expected, log_series(self._cut(0, ORDER).F).grade_part(2))

    def test_bad_order(self):
        from twists.twist import assemble_twist

        with self.assertRaises(ValueError):
            assemble_twist(HALF, 0)

    def test_cached(self):
        self.assertIs(self._cut(HALF, ORDER), self._cut(Fraction(1, 2), ORDER))


class CoproductAntipodeTests(TestCase):
    def test_u0_momentum_coproduct(self):
        from twists.twist import deformed_coproduct

        one, A, E, _ = _gens()
        expected = tensor(E, one) + tensor(one + A, E)
        self.assertEqual(expected, deformed_coproduct("E", 0, ORDER))

    def test_u1_dilatation_coproduct(self):
        from twists.twist import deformed_coproduct

        one, A, _, D = _gens()
        expected = tensor(D, inverse_series(one - A)) + tensor(one, D)
        self.assertEqual(expected, deformed_coproduct("D", 1, ORDER))

    def test_closed_forms(self):
        from twists.twist import closed_form_coproduct
        from twists.twist import deformed_coproduct

        for u in U_VALUES:
            for g in ("E", "D"):
                with self.subTest(u=u, g=g):
                    self.assertEqual(
                        closed_form_coproduct(g, u, ORDER), deformed_coproduct(g, u, ORDER)
                    )

    def test_unknown_generator(self):
        from twists.twist import closed_form_coproduct
        from twists.twist import deformed_coproduct

        with self.assertRaises(ValueError):
            closed_form_coproduct("A", 0, ORDER)
        with self.assertRaises(ValueError):
            deformed_coproduct("X", 0, ORDER)

    def test_u0_antipodes(self):
        from twists.twist import deformed_antipode

        one, A, E, D = _gens()
        self.assertEqual(-E * inverse_series(one + A), deformed_antipode("E", 0, ORDER))
        self.assertEqual(-(one + A) * D, deformed_antipode("D", 0, ORDER))

    def test_u1_antipode(self):
        from twists.twist import deformed_antipode

        one, A, _, D = _gens()
        self.assertEqual(-D * (one - A), deformed_antipode("D", 1, ORDER))

    def test_interior_dilatation_antipode(self):
        from twists.twist import deformed_antipode

        one, A, _, D = _gens(order=4)
        for u in (HALF, Fraction(2), Fraction(-1, 3)):
            v = 1 - u
            expected = (
                -D
                - (A * D).scale(v)
                + (D * A).scale(u)
                - (A * A).scale(u * v) * inverse_series(one - A.scale(u))
            )
            with self.subTest(u=u):
                self.assertEqual(expected, deformed_antipode("D", u, 4))

    def test_two_factor_tail_is_wrong_at_interior_u(self):
        from twists.twist import deformed_antipode

        one, A, _, D = _gens(order=4)
        v = HALF
        two_factor_tail = (A * A).scale(HALF * v * v) * inverse_series(
            (one + A.scale(v)) * (one - A.scale(HALF))
        )
        candidate = -D - (A * D).scale(v) + (D * A).scale(HALF) - two_factor_tail
        A2 = A * A
        expected_gap = -(
            A2.scale(Fraction(1, 8))
            + (A2 * A).scale(Fraction(1, 8))
            + (A2 * A2).scale(Fraction(1, 32))
        )
        self.assertEqual(expected_gap, deformed_antipode("D", HALF, 4) - candidate)

    def test_classical_r_matrix(self):
        from twists.twist import classical_r_matrix
        from twists.twist import r_matrix

        _, A, _, D = _gens()
        self.assertEqual(tensor(A, D) - tensor(D, A), classical_r_matrix(ORDER))
        for u in U_VALUES:
            with self.subTest(u=u):
                self.assertEqual(classical_r_matrix(ORDER), r_matrix(u, ORDER).grade_part(1))


class VerificationTests(TestCase):
    @property
    def _checks(self):
        from twists import twist

        return (
            twist.verify_cocycle,
            twist.verify_normalization,
            twist.verify_inverse,
            twist.verify_coproduct,
            twist.verify_counit,
            twist.verify_antipode,
            twist.verify_r_matrix,
            twist.verify_quasitriangular,
            twist.verify_yang_baxter,
            twist.verify_coboundary,
            twist.verify_log_expansion,
        )

    def test_all_identities_hold(self):
        for check in self._checks:
            for u in U_VALUES:
                with self.subTest(check=check.__name__, u=u):
                    report = check(u, ORDER)
                    self.assertTrue(report.passed, str(report))
                    self.assertEqual("0", report.residual)
                    self.assertEqual(str(u), report.u)
                    self.assertEqual(ORDER, report.order)

    def test_all_identities_hold_at_order_four(self):
        for check in self._checks:
            for u in (Fraction(0), HALF, Fraction(1)):
                with self.subTest(check=check.__name__, u=u):
                    report = check(u, 4)
                    self.assertTrue(report.passed, str(report))
                    self.assertEqual(4, report.order)

    def test_antipode_at_order_four(self):
        from twists.twist import verify_antipode

        for u in (HALF, Fraction(2), Fraction(-1, 3)):
            with self.subTest(u=u):
                report = verify_antipode(u, 4)
                self.assertTrue(report.passed, str(report))

    def test_identity_names(self):
        names = [check(HALF, ORDER).identity for check in self._checks]
        self.assertEqual(
            [
                "cocycle",
                "normalization",
                "inverse",
                "coproduct",
                "counit",
                "antipode",
                "rmatrix",
                "quasitriangular",
                "yang-baxter",
                "coboundary",
                "logexp",
            ],
            names,
        )

    def test_order_requirements(self):
        from twists.twist import verify_cocycle
        from twists.twist import verify_log_expansion
        from twists.twist import verify_r_matrix

        with self.assertRaises(ValueError):
            verify_cocycle(0, 1)
        with self.assertRaises(ValueError):
            verify_r_matrix(0, 1)
        with self.assertRaises(ValueError):
            verify_log_expansion(0, 2)


class CorruptedTwistTests(TestCase):
    """Every check must notice a deliberately damaged twist."""

    def test_dropped_term_breaks_cocycle(self):
        from twists.twist import build_twist
        from twists.twist import verify_cocycle

        family = build_twist(0, ORDER)
        broken = family.with_twist(family.F.drop_term(((2, 0, 0), (0, 0, 1))))
        report = verify_cocycle(0, ORDER, broken)
        self.assertFalse(report.passed)
        self.assertIn("A⊗A⊗D", report.residual)

    def test_extra_term_breaks_normalization(self):
        from twists.twist import build_twist
        from twists.twist import verify_normalization

        one, A, _, _ = _gens()
        family = build_twist(0, ORDER)
        broken = family.with_twist(family.F + tensor(A, one))
        report = verify_normalization(0, ORDER, broken)
        self.assertFalse(report.passed)
        self.assertIn("(id⊗ε)F - 1", report.residual)

    def test_sign_mutations_break_log_expansion(self):
        from twists.twist import assemble_twist
        from twists.twist import verify_log_expansion

        for signs in ((-1, 1, 1), (1, -1, 1), (1, 1, -1)):
            with self.subTest(signs=signs):
                family = assemble_twist(HALF, ORDER, signs)
                self.assertFalse(verify_log_expansion(HALF, ORDER, family).passed)

    def test_sign_mutations_break_r_matrix(self):
        from twists.twist import assemble_twist
        from twists.twist import verify_r_matrix

        family = assemble_twist(HALF, ORDER, (1, -1, 1))
        self.assertFalse(verify_r_matrix(HALF, ORDER, family).passed)
