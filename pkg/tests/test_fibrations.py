# -*- coding: utf-8 -*-
import unittest
from fractions import Fraction
from k3fibrations.algebra.exactalg import symbols
from k3fibrations.models.fibrations import (POLARIZATION_TABLES,
                                            FibrationClass, Locus, build,
                                            check_row,
                                            expected_row, j30_point,
                                            locus_point, modular_model,
                                            on_locus, reproduce_table,
                                            rescale_model, square_point)
from k3fibrations.models.moduli import (InvariantPoint, ParamPoint,
                                        invariants, j30)
from k3fibrations.models.weierstrass import (TORSION_Z2, WModel,
                                             classify_fibration)

GENERIC = ParamPoint(Fraction(2, 7), Fraction(-1, 3), Fraction(2, 3),
                     Fraction(7, 5), Fraction(-4, 9), Fraction(5, 7))


class TestBuild(unittest.TestCase):
    def test_symbolic_parameters(self):
        expected = {
            FibrationClass.STANDARD: {"J2", "J3", "J5", "J6", "a"},
            FibrationClass.ALTERNATE: {"J2", "J3", "J4", "J5", "J6"},
            FibrationClass.BFD: {"J2", "J3", "J4", "J5", "J6"},
            FibrationClass.MAXIMAL: {"J2", "J3", "J4", "J5", "J6"},
        }
        for cls, names in expected.items():
            with self.subTest(cls=cls):
                self.assertEqual(set(build(cls).parameters), names)

    def test_raw_parameters(self):
        m = build("alternate", raw=True)
        self.assertEqual(set(m.parameters),
                         {"alpha", "beta", "gamma", "delta", "epsilon",
                          "zeta"})
        self.assertEqual(m.label, "alternate (raw)")

    def test_string_class(self):
        self.assertEqual(build("bfd").label, "bfd")
        with self.assertRaises(ValueError):
            build("elliptic")

    def test_branch(self):
        self.assertEqual(build("standard", branch=-1).label,
                         "standard (-a)")
        with self.assertRaises(ValueError):
            build("standard", branch=2)

    def test_alternate_coefficients(self):
        t, = symbols("t")
        m = build("alternate", InvariantPoint(1, 1, 1, 3, 2))
        self.assertEqual(m.a2, t**3 - 3 * t - 2)
        self.assertEqual(m.a4, t**2 - 3 * t + 2)
        self.assertTrue(m.a6.is_zero())

    def test_standard_needs_root(self):
        with self.assertRaises(ValueError):
            build("standard", InvariantPoint(1, 1, 1, 1, 1))

    def test_standard_branches_agree(self):
        J = invariants(GENERIC)
        plus = classify_fibration(build("standard", J, 1))
        minus = classify_fibration(build("standard", J, -1))
        self.assertEqual(plus, minus)

    def test_raw_matches_table(self):
        for cls in (FibrationClass.STANDARD, FibrationClass.BFD):
            with self.subTest(cls=cls):
                cfg = classify_fibration(build(cls, GENERIC))
                self.assertEqual(cfg, expected_row(cls, "generic").config)

    def test_j6_zero_chart(self):
        for branch in (1, -1):
            with self.subTest(branch=branch):
                m = build("standard", InvariantPoint(1, 1, 1, 3, 0),
                          branch)
                self.assertIn("J6=0", m.label)
                self.assertEqual(m.parameters, ())

    def test_modular_model_is_cached(self):
        self.assertIs(modular_model(FibrationClass.MAXIMAL),
                      modular_model(FibrationClass.MAXIMAL))


class TestRescale(unittest.TestCase):
    def test_rescale(self):
        t, = symbols("t")
        m = WModel.short(4 * t**2, 8 * t**3)
        out = rescale_model(m, 2, 4)
        self.assertEqual(out.a4, t**2)
        self.assertEqual(out.a6, t**3)

    def test_zero_mu(self):
        t, = symbols("t")
        with self.assertRaises(ValueError):
            rescale_model(WModel.short(t, t), 1, 0)


class TestLoci(unittest.TestCase):
    def test_square_point(self):
        J = square_point(1, 2, 3, 4)
        self.assertEqual(J.a_squared, 0)
        self.assertTrue(on_locus(J, Locus.A_ZERO))

    def test_j30_point(self):
        J = j30_point(2, 3, Fraction(1, 5))
        self.assertEqual(J.J6, 1)
        self.assertEqual(j30(J), 0)
        self.assertEqual(J.a**2, J.a_squared)
        with self.assertRaises(ValueError):
            j30_point(0, 3, 1)

    def test_locus_points(self):
        for cls in FibrationClass:
            for row in POLARIZATION_TABLES[cls]:
                with self.subTest(cls=cls, locus=row.locus):
                    J = locus_point(cls, row.locus)
                    self.assertTrue(on_locus(J, row.locus))

    def test_standard_has_no_a_zero_row(self):
        with self.assertRaises(ValueError):
            locus_point("standard", "a=0")
        with self.assertRaises(KeyError):
            expected_row("standard", "a=0")


class TestTable(unittest.TestCase):
    def test_row_count(self):
        rows = sum(len(r) for r in POLARIZATION_TABLES.values())
        self.assertEqual(rows, 23)

    def test_expected_rows(self):
        row = expected_row("alternate", "a=0")
        self.assertEqual(row.config.picard, 17)
        self.assertEqual(row.config.lattice_summands, ("E8", "D7"))
        self.assertEqual(row.config.discriminant_group, "Z4")
        self.assertEqual(row.torsion, TORSION_Z2)

    def test_expected_rows_are_consistent(self):
        for cls, rows in POLARIZATION_TABLES.items():
            for row in rows:
                with self.subTest(cls=cls, locus=row.locus):
                    cfg = row.config
                    self.assertEqual(cfg.euler_total, 24)
                    self.assertEqual(cfg.picard, row.picard)
                    self.assertEqual(cfg.lattice_summands, row.lattice)
                    self.assertEqual(cfg.discriminant_group,
                                     row.discriminant_group)

    def test_single_row(self):
        check = check_row("bfd", expected_row("bfd", "J4=0"))
        self.assertTrue(check.matches)
        self.assertEqual(check.as_row()["computed"], "II* + III* + 5I1")

    def test_reproduce_table(self):
        checks = reproduce_table()
        self.assertEqual(len(checks), 23)
        for check in checks:
            with self.subTest(cls=check.cls, locus=check.expected.locus):
                self.assertIsNone(check.error)
                self.assertTrue(check.matches, check.as_row())


if __name__ == "__main__":
    unittest.main()
