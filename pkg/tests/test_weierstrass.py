# -*- coding: utf-8 -*-
import math
import unittest
from fractions import Fraction
from k3fibrations.algebra.exactalg import MPoly, factor_rational, symbols
from k3fibrations.models.fibrations import FibrationClass, build
from k3fibrations.models.moduli import ParamPoint, invariants
from k3fibrations.models.weierstrass import (TORSION_TRIVIAL, TORSION_Z2,
                                             ClassificationError,
                                             DegenerateModelError,
                                             FiberConfig, KodairaType, Place,
                                             WModel, classify_fibration,
                                             kodaira_classify, local_data,
                                             shioda_tate_rank,
                                             two_torsion_sections, valuation)


class TestKodaira(unittest.TestCase):
    def test_table(self):
        cases = [((0, 0, 0), "I0"), ((0, 0, 5), "I5"), ((1, 1, 2), "II"),
                 ((1, 2, 3), "III"), ((2, 2, 4), "IV"), ((2, 3, 6), "I0*"),
                 ((3, 3, 6), "I0*"), ((2, 3, 14), "I8*"),
                 ((3, 4, 8), "IV*"), ((3, 5, 9), "III*"),
                 ((4, 5, 10), "II*"), ((math.inf, 5, 10), "II*")]
        for triple, expected in cases:
            with self.subTest(triple=triple):
                self.assertEqual(str(kodaira_classify(*triple)), expected)

    def test_outside_table(self):
        for triple in ((4, 6, 12), (1, 1, 5), (3, 5, 11)):
            with self.subTest(triple=triple):
                with self.assertRaises(ClassificationError):
                    kodaira_classify(*triple)

    def test_type_numbers(self):
        cases = [("I1", 1, None), ("I8*", 14, "D12"), ("III", 3, "A1"),
                 ("IV*", 8, "E6"), ("III*", 9, "E7"), ("II*", 10, "E8"),
                 ("I6", 6, "A5")]
        for text, euler, ade in cases:
            with self.subTest(text=text):
                kind = KodairaType.parse(text)
                self.assertEqual(kind.euler_number, euler)
                self.assertEqual(kind.ade_label, ade)
                self.assertEqual(str(kind), text)

    def test_invalid_types(self):
        with self.assertRaises(ValueError):
            KodairaType("V")
        with self.assertRaises(ValueError):
            KodairaType("II", 3)


class TestLocalData(unittest.TestCase):
    def setUp(self):
        self.t, = symbols("t")

    def test_valuation(self):
        t = self.t
        self.assertEqual(valuation(t**3 * (t + 1), t, "t"), 3)
        self.assertEqual(valuation(t + 1, t, "t"), 0)
        self.assertEqual(valuation(MPoly.const(0, ("t",)), t, "t"), math.inf)

    def test_minimalization(self):
        t = self.t
        data = local_data(t**5, t**7, Place.finite(t))
        self.assertEqual(tuple(data), (1, 1, 2))

    def test_infinity(self):
        t = self.t
        data = local_data(MPoly.const(0, ("t",)), t**5 * (t**2 + 1),
                          Place.infinity())
        self.assertEqual(tuple(data), (math.inf, 5, 10))

    def test_free_parameters(self):
        t, j = symbols("t", "J2")
        with self.assertRaises(ValueError):
            local_data(j * t, t**5, Place.finite(MPoly.var("t")))


class TestWModel(unittest.TestCase):
    def setUp(self):
        self.t, = symbols("t")

    def test_depress(self):
        m = WModel(MPoly.const(3), MPoly.const(0), MPoly.const(0))
        f, g = m.depress()
        self.assertEqual(f, -3)
        self.assertEqual(g, 2)
        self.assertTrue(m.discriminant().is_zero())
        with self.assertRaises(DegenerateModelError):
            classify_fibration(m)

    def test_zero_model(self):
        with self.assertRaises(DegenerateModelError):
            WModel.short(MPoly.const(0), MPoly.const(0))

    def test_parameters(self):
        t, j = symbols("t", "J2")
        m = WModel.short(j * t, t**5, label="demo")
        self.assertEqual(m.parameters, ("J2",))
        bound = m.specialize({"J2": 2})
        self.assertEqual(bound.parameters, ())
        self.assertEqual(bound.a4, 2 * t)
        self.assertEqual(bound.label, "demo")

    def test_e8_e8_surface(self):
        t = self.t
        m = WModel.short(MPoly.const(0, ("t",)), t**5 * (t**2 + 1))
        cfg = classify_fibration(m)
        self.assertEqual(str(cfg), "2II* + 2II")
        self.assertEqual(cfg.euler_total, 24)
        self.assertEqual(cfg.picard, 18)
        self.assertEqual(cfg.mw_torsion, TORSION_TRIVIAL)
        self.assertEqual(cfg.lattice, "H + E8(-1) + E8(-1)")
        self.assertEqual(cfg.discriminant_group, "0")
        self.assertIn(("(t)", "II*"), cfg.places)
        self.assertIn(("t=oo", "II*"), cfg.places)
        self.assertIn(("(t^2 + 1)", "II"), cfg.places)

    def test_euler_sum_mismatch(self):
        t = self.t
        m = WModel.short(MPoly.const(0, ("t",)), t**5)
        with self.assertRaises(ClassificationError):
            classify_fibration(m)

    def test_two_torsion(self):
        t = self.t
        m = WModel(t, t**2 + 1, MPoly.const(0, ("t",)))
        self.assertEqual(two_torsion_sections(m), TORSION_Z2)

    def test_trivial_torsion(self):
        t = self.t
        m = WModel.short(MPoly.const(0, ("t",)), t**5 * (t**2 + 1))
        self.assertEqual(two_torsion_sections(m), TORSION_TRIVIAL)


class TestFiberConfig(unittest.TestCase):
    def test_parse(self):
        cfg = FiberConfig.parse("2III* + 6I1")
        self.assertEqual(str(cfg), "2III* + 6I1")
        self.assertEqual(cfg.euler_total, 24)
        self.assertEqual(cfg.picard, 16)
        self.assertEqual(cfg.root_lattice, ("E7", "E7"))
        self.assertEqual(cfg.discriminant_group, "Z2^2")

    def test_shioda_tate(self):
        cases = [("2III* + 6I1", 16), ("I8* + I4 + 6I1", 17),
                 ("2II* + 4I1", 18), ("24I1", 2)]
        for fibers, rank in cases:
            with self.subTest(fibers=fibers):
                self.assertEqual(shioda_tate_rank(FiberConfig.parse(fibers)),
                                 rank)

    def test_parse_rejects_garbage(self):
        with self.assertRaises(ValueError):
            FiberConfig.parse("2III* + banana")

    def test_overlattice(self):
        fibers = "I8* + 2III + 4I1"
        plain = FiberConfig.parse(fibers)
        self.assertEqual(plain.root_lattice, ("D12", "A1", "A1"))
        self.assertEqual(plain.discriminant_group, "Z2^4")
        glued = FiberConfig.parse(fibers, TORSION_Z2)
        self.assertEqual(glued.lattice_summands, ("E7", "E7"))
        self.assertEqual(glued.lattice, "H + E7(-1) + E7(-1)")
        self.assertEqual(glued.discriminant_group, "Z2^2")
        self.assertEqual(glued.picard, 16)

    def test_refines(self):
        generic = FiberConfig.parse("2III* + 6I1")
        special = FiberConfig.parse("II* + III* + 5I1")
        self.assertTrue(special.refines(generic))
        self.assertFalse(generic.refines(special))

    def test_row(self):
        row = FiberConfig.parse("I12* + 6I1").as_row()
        self.assertEqual(row["p_X"], 18)
        self.assertEqual(row["MW"], TORSION_TRIVIAL)
        self.assertEqual(row["D(L)"], "Z2^2")


class TestClassificationProperties(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        point = ParamPoint(Fraction(2, 7), Fraction(-1, 3), Fraction(2, 3),
                           Fraction(7, 5), Fraction(-4, 9), Fraction(5, 7))
        J = invariants(point)
        cls.models = {fc: build(fc, J) for fc in FibrationClass}
        cls.configs = {fc: classify_fibration(m)
                       for fc, m in cls.models.items()}

    def test_chart_at_infinity(self):
        for fc, m in self.models.items():
            with self.subTest(cls=fc):
                f, g = m.depress()
                flipped = WModel.short(f.reciprocal("t", 8),
                                       g.reciprocal("t", 12))
                cfg = classify_fibration(flipped)
                self.assertEqual(cfg.fibers, self.configs[fc].fibers)
                self.assertEqual(dict(cfg.places).get("(t)", "I0"),
                                 dict(self.configs[fc].places).get("t=oo",
                                                                   "I0"))

    def test_minimalization_is_idempotent(self):
        t, = symbols("t")
        u = t - 3
        for fc, m in self.models.items():
            f, g = m.depress()
            for pi, _ in factor_rational(m.discriminant(), "t").factors:
                place = Place.finite(pi)
                with self.subTest(cls=fc, place=str(place)):
                    data = local_data(f, g, place)
                    self.assertTrue(data.ordf < 4 or data.ordg < 6)
                    self.assertEqual(
                        local_data(f * pi**4, g * pi**6, place), data)
            with self.subTest(cls=fc, place="(t - 3)"):
                padded = WModel.short(f * u**4, g * u**6)
                self.assertEqual(classify_fibration(padded).fibers,
                                 self.configs[fc].fibers)

    def test_constant_quadratic_twist(self):
        for fc, m in self.models.items():
            for d in (-1, 2, Fraction(-3, 5)):
                with self.subTest(cls=fc, d=d):
                    twisted = WModel(d * m.a2, d**2 * m.a4, d**3 * m.a6)
                    self.assertEqual(classify_fibration(twisted),
                                     self.configs[fc])


if __name__ == "__main__":
    unittest.main()
