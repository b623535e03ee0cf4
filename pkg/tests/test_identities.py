# -*- coding: utf-8 -*-
import unittest
from fractions import Fraction
from k3fibrations.algebra.exactalg import symbols
from k3fibrations.models.fibrations import FibrationClass, modular_model
from k3fibrations.models.identities import (BFD_Z_NOTE, FAILED,
                                            VERIFIED_SYMBOLIC,
                                            IdentityReport, SuiteOptions,
                                            compare_at_points, fit_monomial,
                                            format_monomial, limit_models,
                                            maximal_to_alternate,
                                            model_weights,
                                            reduce_a_squared, run_suite,
                                            verified_at, verify_convergence,
                                            verify_fplus_fminus,
                                            verify_generic,
                                            verify_j30_identity,
                                            verify_reductions,
                                            verify_substitution,
                                            verify_weights)
from k3fibrations.models.moduli import InvariantPoint

POINTS = [InvariantPoint(1, 1, 1, 3, 2), InvariantPoint(2, -1, 3, 1, 5),
          InvariantPoint(Fraction(1, 2), 3, -2, 7, 1)]


def by_name(reports):
    return {r.name: r for r in reports}


class TestHelpers(unittest.TestCase):
    def test_reduce_a_squared(self):
        a, J4, J5, J6 = symbols("a", "J4", "J5", "J6")
        square = J5**2 - 4 * J4 * J6
        self.assertEqual(reduce_a_squared(a**2 + 1), square + 1)
        self.assertEqual(reduce_a_squared(a**3), square * a)
        self.assertEqual(reduce_a_squared(J4 + 1), J4 + 1)

    def test_fit_monomial(self):
        fit = fit_monomial(lambda J: 3 * J.J2**2 / J.J4, POINTS)
        self.assertEqual(fit, (3, (2, 0, -1, 0, 0)))
        self.assertEqual(format_monomial(*fit), "3 * J2^2 * J4^-1")

    def test_fit_monomial_rejects_sums(self):
        self.assertIsNone(fit_monomial(lambda J: J.J2 + J.J3, POINTS))

    def test_compare_equal(self):
        report = compare_at_points("demo", lambda J: J.J2, lambda J: J.J2,
                                   POINTS)
        self.assertEqual(report.status, verified_at(3))
        self.assertTrue(report.passed)

    def test_compare_constant_ratio(self):
        report = compare_at_points("demo", lambda J: 2 * J.J2,
                                   lambda J: J.J2, POINTS)
        self.assertEqual(report.constant_ratio, 2)
        self.assertEqual(report.status, verified_at(3))

    def test_compare_monomial(self):
        report = compare_at_points("demo", lambda J: J.J2**2 * J.J6,
                                   lambda J: J.J2, POINTS)
        self.assertEqual(report.status, FAILED)
        self.assertFalse(report.passed)
        self.assertEqual(report.fitted_prefactor, "1 * J2^1 * J6^1")
        self.assertEqual(len(report.witnesses), 1)

    def test_compare_with_correction(self):
        report = compare_at_points(
            "demo", lambda J: J.J2 + 1, lambda J: J.J3, POINTS,
            [("fixed", lambda J: J.J3 * J.J5)])
        self.assertEqual(report.status, FAILED)
        self.assertEqual(report.factor, "fixed")
        self.assertEqual(report.fitted_prefactor, "1 * J5^1")

    def test_compare_fails(self):
        report = compare_at_points("demo", lambda J: J.J2 + 1,
                                   lambda J: J.J2, POINTS)
        self.assertEqual(report.status, FAILED)
        self.assertIsNone(report.fitted_prefactor)
        self.assertFalse(report.passed)

    def test_report_json(self):
        report = IdentityReport("demo", verified_at(3),
                                constant_ratio=Fraction(-1, 2), note="x")
        self.assertEqual(report.to_json()["constant_ratio"], "-1/2")
        self.assertEqual(report.as_row(),
                         {"check": "demo", "status": verified_at(3),
                          "detail": "x"})


class TestSymbolicIdentities(unittest.TestCase):
    def test_substitutions(self):
        for cls in FibrationClass:
            with self.subTest(cls=cls):
                report = verify_substitution(cls, points=3)
                self.assertTrue(report.passed, report.to_json())

    def test_bfd_z_sign(self):
        corrected = verify_substitution(FibrationClass.BFD, points=3)
        self.assertTrue(corrected.passed, corrected.to_json())
        self.assertIn(BFD_Z_NOTE, corrected.note)
        printed = verify_substitution(FibrationClass.BFD, points=3,
                                      z_sign=-1)
        self.assertEqual(printed.status, FAILED)
        self.assertIsNotNone(printed.residual)

    def test_fplus_fminus(self):
        reports = by_name(verify_fplus_fminus())
        self.assertEqual(reports["fplus_fminus.symmetry"].status,
                         VERIFIED_SYMBOLIC)
        self.assertEqual(reports["fplus_fminus.point"].status,
                         verified_at(4))
        self.assertEqual(reports["fplus_fminus.j6_zero_charts"].status,
                         VERIFIED_SYMBOLIC)

    def test_reductions(self):
        reports = verify_reductions()
        self.assertEqual(len(reports), 3)
        for report in reports:
            with self.subTest(name=report.name):
                self.assertEqual(report.status, VERIFIED_SYMBOLIC)
                self.assertIn("(1/12)^k", report.note)

    def test_convergence(self):
        for report in verify_convergence():
            with self.subTest(name=report.name):
                self.assertEqual(report.status, VERIFIED_SYMBOLIC)

    def test_limit_charts(self):
        first, second = limit_models()
        self.assertEqual(first.a4.reciprocal("t", 8), second.a4)
        self.assertEqual(first.a6.reciprocal("t", 12), second.a6)

    def test_maximal_to_alternate(self):
        mx = modular_model(FibrationClass.MAXIMAL).specialize({"J4": 0})
        alt = modular_model(FibrationClass.ALTERNATE).specialize({"J4": 0})
        out = maximal_to_alternate(mx)
        self.assertEqual(out.a2, alt.a2)
        self.assertEqual(out.a4, alt.a4)
        self.assertTrue(out.a6.is_zero())

    def test_weights(self):
        reports = verify_weights()
        self.assertEqual([r.name for r in reports],
                         ["weights.alternate", "weights.bfd",
                          "weights.maximal"])
        for report in reports:
            self.assertEqual(report.status, VERIFIED_SYMBOLIC)

    def test_standard_is_not_covariant(self):
        degs = model_weights(modular_model(FibrationClass.STANDARD), 2)
        self.assertGreater(len(degs[1]), 1)


class TestJ30(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.reports = by_name(verify_j30_identity(points=4, seed=1))

    def test_standard_quotient(self):
        self.assertEqual(self.reports["j30.standard_quotient"].status,
                         verified_at(4))

    def test_bfd_prefactor(self):
        report = self.reports["j30.bfd_quotient"]
        self.assertEqual(report.status, FAILED)
        self.assertFalse(report.passed)
        self.assertIsNone(report.constant_ratio)
        self.assertIn("J2^9", report.fitted_prefactor)
        self.assertIn("J4^-9", report.fitted_prefactor)

    def test_maximal_needs_resultant(self):
        report = self.reports["j30.maximal"]
        self.assertEqual(report.status, FAILED)
        self.assertFalse(report.passed)
        self.assertIsNone(report.constant_ratio)
        self.assertEqual(report.factor, "Disc_t d / Res_t(alpha, beta)^3")
        self.assertIsNotNone(report.fitted_prefactor)

    def test_passing_means_exact(self):
        for report in self.reports.values():
            with self.subTest(name=report.name):
                if report.passed:
                    self.assertIsNone(report.fitted_prefactor)
                    self.assertTrue(report.status.startswith("verified-"))

    def test_locus_point(self):
        self.assertEqual(self.reports["j30.locus_point"].status,
                         verified_at(1))


class TestSuite(unittest.TestCase):
    def test_generic(self):
        for report in verify_generic(points=2, seed=4):
            with self.subTest(name=report.name):
                self.assertTrue(report.status.startswith("verified-at-2"),
                                report.to_json())

    def test_generic_hundred_points(self):
        reports = verify_generic(points=100, seed=0)
        self.assertEqual(len(reports), 4)
        for report in reports:
            with self.subTest(name=report.name):
                self.assertEqual(report.status, verified_at(100),
                                 report.to_json())

    def test_filter(self):
        reports = run_suite(SuiteOptions(points=2), "convergence.chart")
        self.assertEqual([r.name for r in reports],
                         ["convergence.chart_map"])

    def test_sorted(self):
        names = [r.name for r in run_suite(SuiteOptions(), "weights")]
        self.assertEqual(names, sorted(names))

    def test_unknown_filter(self):
        with self.assertRaises(ValueError):
            run_suite(SuiteOptions(points=2), "nothing")


if __name__ == "__main__":
    unittest.main()
