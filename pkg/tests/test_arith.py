import sys
import unittest
from fractions import Fraction
from pathlib import Path

SRC_DIR = Path(__file__).resolve().parents[1] / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from hypothesis import given, strategies as st  # noqa: E402

from wres_verifier.arith import (  # noqa: E402
    I,
    ONE,
    ZERO,
    BigComplexFloat,
    GaussianRational,
    binomial_general,
    falling_factorial,
    gaussian_arith,
)
from wres_verifier.errors import DivisionByZeroError  # noqa: E402

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
gaussians = st.builds(GaussianRational, fractions, fractions)


class GaussianRationalTests(unittest.TestCase):
    def test_i_squared(self):
        self.assertEqual(I * I, -ONE)

    def test_division(self):
        self.assertEqual(gaussian_arith(1, I, "/"), -I)
        self.assertEqual(GaussianRational(1, 1) / GaussianRational(1, -1), I)

    def test_division_by_zero(self):
        with self.assertRaises(DivisionByZeroError):
            gaussian_arith(1, 0, "/")
        with self.assertRaises(ZeroDivisionError):
            ONE / ZERO

    def test_unknown_operator(self):
        with self.assertRaises(ValueError):
            gaussian_arith(1, 2, "%")

    def test_text(self):
        cases = {
            GaussianRational(Fraction(-15, 8)): "-15/8",
            GaussianRational(0, Fraction(-1, 8)): "-i/8",
            GaussianRational(0, Fraction(3, 4)): "3*i/4",
            GaussianRational(1, -2): "1 - 2*i",
        }
        for value, text in cases.items():
            with self.subTest(text=text):
                self.assertEqual(str(value), text)

    def test_negative_power(self):
        self.assertEqual((2 * I) ** -2, GaussianRational(Fraction(-1, 4)))

    def test_equal_to_int(self):
        self.assertEqual(GaussianRational(3), 3)
        self.assertEqual(hash(GaussianRational(3)), hash(3))

    @given(gaussians, gaussians, gaussians)
    def test_field_laws(self, a, b, c):
        self.assertEqual(a + b, b + a)
        self.assertEqual(a * b, b * a)
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual(a - a, ZERO)

    @given(gaussians)
    def test_inverse(self, a):
        if a.is_zero():
            return
        self.assertEqual(a * a.reciprocal(), ONE)


class CombinatoricsTests(unittest.TestCase):
    def test_falling_factorial_negative(self):
        self.assertEqual(falling_factorial(-2, 3), -24)
        self.assertEqual(falling_factorial(5, 0), 1)

    def test_binomial_negative(self):
        self.assertEqual(binomial_general(-2, 3), -4)
        self.assertEqual(binomial_general(5, 2), 10)

    @given(st.integers(-30, 30), st.integers(1, 12))
    def test_pascal_rule(self, n, k):
        self.assertEqual(
            binomial_general(n, k),
            binomial_general(n - 1, k) + binomial_general(n - 1, k - 1),
        )


class BigComplexFloatTests(unittest.TestCase):
    def test_relative_error_of_exact_value_is_zero(self):
        value = BigComplexFloat.from_gaussian(GaussianRational(Fraction(1, 3), 2), 128)
        self.assertEqual(value.relative_error(GaussianRational(Fraction(1, 3), 2)), 0)

    def test_precision_floor(self):
        with self.assertRaises(ValueError):
            BigComplexFloat.from_gaussian(ONE, 32)


if __name__ == "__main__":
    unittest.main()
