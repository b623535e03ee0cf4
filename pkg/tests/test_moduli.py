# -*- coding: utf-8 -*-
import unittest
from fractions import Fraction
import numpy as np
from k3fibrations.models.moduli import (MODULAR_WEIGHTS, SWAP,
                                        InadmissiblePointError,
                                        InvariantPoint, ParamPoint, act,
                                        act_word, generic_guard, invariants,
                                        isomorphic, j30, sample_params,
                                        symbolic_invariants,
                                        weighted_degrees, wp_normalize)


class TestPoints(unittest.TestCase):
    def setUp(self):
        self.p = ParamPoint(1, 1, 1, 1, 1, 2)

    def test_invariants(self):
        J = invariants(self.p)
        self.assertEqual(J.values, (1, 1, 1, 3, 2))
        self.assertEqual(J.a, 1)
        self.assertEqual(J.a_squared, 1)

    def test_inadmissible_params(self):
        for values in ((1, 1, 0, 0, 1, 1), (1, 1, 1, 1, 0, 0)):
            with self.subTest(values=values):
                with self.assertRaises(InadmissiblePointError):
                    invariants(ParamPoint(*values))

    def test_inadmissible_invariants(self):
        with self.assertRaises(InadmissiblePointError):
            InvariantPoint(1, 1, 0, 0, 0)

    def test_wrong_root(self):
        with self.assertRaises(ValueError):
            InvariantPoint(1, 1, 1, 3, 2, a=2)
        self.assertEqual(InvariantPoint(1, 1, 1, 3, 2, a=-1).a, -1)

    def test_with_root(self):
        self.assertEqual(InvariantPoint(1, 1, 1, 3, 2).with_root().a, 1)
        with self.assertRaises(ValueError):
            InvariantPoint(1, 1, 1, 1, 1).with_root()

    def test_json(self):
        J = invariants(self.p)
        self.assertEqual(InvariantPoint.from_json(J.to_json()), J)
        self.assertEqual(ParamPoint.from_json(self.p.to_json()), self.p)
        with self.assertRaises(ValueError):
            ParamPoint.from_json({"alpha": "1"})

    def test_symbolic_a_squared(self):
        s = symbolic_invariants()
        self.assertEqual(s["a"]**2, s["J5"]**2 - 4 * s["J4"] * s["J6"])

    def test_weights(self):
        s = symbolic_invariants()
        weights = {"alpha": 4, "beta": 6, "gamma": 10, "delta": 12,
                   "epsilon": -2, "zeta": 0}
        for name, weight in MODULAR_WEIGHTS.items():
            with self.subTest(name=name):
                self.assertEqual(weighted_degrees(s[name], weights),
                                 {weight})
        self.assertEqual(weighted_degrees(s["a"], weights), {10})


class TestGroupAction(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(11)

    def test_scaling_scales_invariants(self):
        for _ in range(20):
            p = sample_params(self.rng)
            t = Fraction(int(self.rng.integers(1, 9)),
                         int(self.rng.integers(1, 9)))
            self.assertEqual(invariants(act(p, t)), invariants(p).scaled(t))

    def test_swap_negates_a(self):
        p = ParamPoint(1, 1, 1, 1, 1, 2)
        J = invariants(p)
        swapped = invariants(act(p, SWAP))
        self.assertEqual(swapped.values, J.values)
        self.assertEqual(swapped.a, -J.a)
        self.assertEqual(act_word(p, [SWAP, SWAP]), p)

    def test_zero_scaling(self):
        with self.assertRaises(ValueError):
            act(ParamPoint(1, 1, 1, 1, 1, 2), 0)

    def test_isomorphic_witness(self):
        p = ParamPoint(1, 2, 3, 5, 7, 11)
        for word in ([3], [Fraction(-1, 2)], [SWAP, 2], [SWAP]):
            with self.subTest(word=word):
                q = act_word(p, word)
                result = isomorphic(p, q)
                self.assertTrue(result.over_extension)
                self.assertTrue(result.over_q)
                self.assertEqual(act_word(p, result.witness), q)

    def test_not_isomorphic(self):
        result = isomorphic(ParamPoint(1, 1, 1, 1, 1, 2),
                            ParamPoint(1, 1, 1, 1, 1, 3))
        self.assertFalse(result.over_extension)
        self.assertFalse(result)

    def test_isomorphic_only_over_extension(self):
        # (gamma, delta) -> 2 (gamma, delta) needs a sixth root of 2
        result = isomorphic(ParamPoint(1, 1, 1, 1, 1, 2),
                            ParamPoint(1, 1, 2, 2, Fraction(1, 2), 1))
        self.assertTrue(result.over_extension)
        self.assertFalse(result.over_q)
        self.assertIsNone(result.to_json()["witness"])


class TestLabels(unittest.TestCase):
    def test_wp_normalize(self):
        J = InvariantPoint(1, 1, 1, 3, 2)
        self.assertEqual(wp_normalize(J), wp_normalize(J.scaled(2)))
        self.assertEqual(wp_normalize(J),
                         wp_normalize(J.scaled(Fraction(-3, 5))))
        self.assertNotEqual(wp_normalize(J),
                            wp_normalize(InvariantPoint(1, 1, 1, 3, 3)))

    def test_wp_normalize_keeps_signs(self):
        # r^2 = 1 and r^4 = -1 have no common solution
        self.assertNotEqual(wp_normalize(InvariantPoint(1, 0, 1, 0, 0)),
                            wp_normalize(InvariantPoint(1, 0, -1, 0, 0)))
        label = wp_normalize(InvariantPoint(1, 0, -1, 0, 0))
        self.assertEqual(label.ratios, (Fraction(-1),))
        self.assertEqual(label, wp_normalize(InvariantPoint(4, 0, -16, 0, 0)))
        # J3 -> -J3 is r = -1
        self.assertEqual(wp_normalize(InvariantPoint(1, 1, 0, 0, 0)),
                         wp_normalize(InvariantPoint(1, -1, 0, 0, 0)))

    def test_zero_pattern(self):
        label = wp_normalize(InvariantPoint(0, 1, 0, 1, 1))
        self.assertEqual(label.zero_pattern,
                         (False, True, False, True, True))
        self.assertTrue(str(label).startswith("0*0** "))

    def test_j30_is_homogeneous(self):
        J = InvariantPoint(1, 1, 1, 3, 2)
        r = Fraction(2, 3)
        self.assertEqual(j30(J.scaled(r)), r**30 * j30(J))

    def test_j30_vanishes_on_double_root(self):
        J = InvariantPoint(1, 0, 1, 0, 0)
        self.assertEqual(j30(J), 0)
        self.assertFalse(generic_guard(J))


class TestSampling(unittest.TestCase):
    def test_seeded(self):
        a = sample_params(np.random.default_rng(5))
        b = sample_params(np.random.default_rng(5))
        self.assertEqual(a, b)
        self.assertTrue(generic_guard(invariants(a)))

    def test_unit_j6(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            p = sample_params(rng, unit_j6=True)
            self.assertEqual(invariants(p).J6, 1)

    def test_impossible_guard(self):
        with self.assertRaises(RuntimeError):
            sample_params(np.random.default_rng(0), guard=lambda J: False,
                          max_tries=5)


if __name__ == "__main__":
    unittest.main()
