"""
Unit Tests for multiplicativity and shifted Ramanujan products
"""

import math
import sys
import unittest
from pathlib import Path

from hypothesis import given, settings, strategies as st

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import InvalidModulusError
from src.ramanujan_algebra import (
    ShiftConvention,
    ShiftedSequence,
    check_multiplicative,
    check_product,
    coprime_pairs,
    eval_shifted,
    find_cyclic_shift,
    predict_product,
    product_shift,
    sweep_products,
)
from src.ramanujan_sums import period_table


class TestShiftedSequence(unittest.TestCase):
    """Evaluation of c_q(n - alpha)"""

    def test_known_values(self):
        self.assertEqual(eval_shifted(ShiftedSequence(3, 1), 1), 2)
        self.assertEqual(eval_shifted(ShiftedSequence(2, 0), 5), -1)
        self.assertEqual(eval_shifted(ShiftedSequence(5, 2), 2), 4)

    def test_alpha_reduced(self):
        self.assertEqual(ShiftedSequence(3, 4).alpha, 1)
        self.assertEqual(ShiftedSequence(3, -1).alpha, 2)


class TestProducts(unittest.TestCase):
    """Prediction and brute-force check of shifted products"""

    def test_equal_shifts(self):
        result = predict_product(3, 2, 1, 1)
        self.assertEqual(result.modulus, 6)
        self.assertEqual(result.shift, 1)
        self.assertEqual(result.values, (1, 2, 1, -1, -2, -1))

    def test_distinct_shifts(self):
        result = predict_product(3, 2, 1, 0)
        self.assertEqual(result.shift, 4)
        self.assertEqual(result.values, (-1, -2, -1, 1, 2, 1))
        self.assertTrue(check_product(3, 2, 1, 0).equal)

    def test_unshifted_is_plain_multiplicativity(self):
        self.assertEqual(predict_product(5, 3, 0, 0).values, period_table(15).values)

    def test_check_product_equal(self):
        for args in ((3, 2, 1, 1), (3, 2, 0, 0), (5, 2, 1, 0), (7, 4, 3, 1)):
            check = check_product(*args)
            self.assertTrue(check.equal, args)
            self.assertIsNone(check.first_mismatch)

    def test_printed_convention_mismatch(self):
        self.assertEqual(product_shift(5, 2, 1, 0, ShiftConvention.CRT), 6)
        self.assertEqual(product_shift(5, 2, 1, 0, ShiftConvention.PRINTED), 8)
        check = check_product(5, 2, 1, 0, ShiftConvention.PRINTED)
        self.assertFalse(check.equal)
        n, brute, predicted = check.first_mismatch
        self.assertEqual(check.brute_force[n], brute)
        self.assertNotEqual(brute, predicted)

    def test_invalid_pairs(self):
        for p, q in ((2, 3), (3, 3), (4, 2), (6, 0)):
            with self.assertRaises(InvalidModulusError):
                predict_product(p, q, 0, 0)

    @given(st.integers(2, 30), st.integers(1, 29), st.integers(-100, 100), st.integers(-100, 100))
    @settings(max_examples=200)
    def test_shift_reduction_and_crt(self, p, q, alpha1, alpha2):
        if p <= q or math.gcd(p, q) != 1:
            return
        base = predict_product(p, q, alpha1, alpha2)
        self.assertEqual(predict_product(p, q, alpha1 + p, alpha2), base)
        self.assertEqual(predict_product(p, q, alpha1, alpha2 - q), base)
        self.assertTrue(check_product(p, q, alpha1, alpha2).equal)

    def test_find_cyclic_shift(self):
        result = predict_product(7, 3, 2, 1)
        self.assertEqual(find_cyclic_shift(result.values, 21), result.shift)
        self.assertIsNone(find_cyclic_shift([1, 1, 1, 1, 1, 1], 6))


class TestMultiplicativeSweeps(unittest.TestCase):
    """Exhaustive sweeps over coprime pairs"""

    def test_coprime_pairs(self):
        pairs = list(coprime_pairs(12))
        self.assertIn((5, 2), pairs)
        self.assertIn((12, 1), pairs)
        self.assertNotIn((4, 2), pairs)
        for p, q in pairs:
            self.assertGreater(p, q)
            self.assertEqual(math.gcd(p, q), 1)
            self.assertLessEqual(p * q, 12)

    def test_multiplicative_identity(self):
        self.assertEqual(check_multiplicative(2500), [])

    def test_sweep_crt_always_agrees(self):
        summary = sweep_products(600)
        self.assertGreater(summary.cases, 0)
        self.assertEqual(summary.non_shift_products, [])
        self.assertEqual(summary.agreements[ShiftConvention.CRT], summary.cases)
        self.assertEqual(summary.witnesses[ShiftConvention.CRT], [])
        self.assertIn(ShiftConvention.CRT, summary.supported_conventions)

    def test_sweep_records_printed_witnesses(self):
        summary = sweep_products(60, max_witnesses=3)
        self.assertLess(summary.agreement_rate(ShiftConvention.PRINTED), 1.0)
        self.assertEqual(len(summary.witnesses[ShiftConvention.PRINTED]), 3)
        p, q, alpha1, alpha2, observed, predicted = summary.witnesses[ShiftConvention.PRINTED][0]
        self.assertEqual(observed, product_shift(p, q, alpha1, alpha2))
        self.assertNotEqual(observed, predicted)


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    test_suite = unittest.TestSuite()
    for case in (TestShiftedSequence, TestProducts, TestMultiplicativeSweeps):
        test_suite.addTest(loader.loadTestsFromTestCase(case))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(test_suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    if not run_tests():
        sys.exit(1)
