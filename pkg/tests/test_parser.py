import sys
import unittest
from fractions import Fraction
from pathlib import Path

SRC_DIR = Path(__file__).resolve().parents[1] / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from wres_verifier.arith import I, GaussianRational  # noqa: E402
from wres_verifier.coeffs import load_catalog  # noqa: E402
from wres_verifier.errors import ExpressionSyntaxError  # noqa: E402
from wres_verifier.parser import (  # noqa: E402
    evaluate_constant,
    format_expression,
    parse_expression,
)
from wres_verifier.ratfunc import RatFuncXi  # noqa: E402


class SyntaxErrorTests(unittest.TestCase):
    def test_offsets(self):
        cases = {
            "xi/(": 4,
            "xi+)": 3,
            "1 $ 2": 2,
            "foo*xi": 0,
            "C(1)": 0,
            "(xi": 3,
        }
        for text, offset in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(ExpressionSyntaxError) as ctx:
                    parse_expression(text)
                self.assertEqual(ctx.exception.offset, offset)
                self.assertIn(f"offset {offset}", str(ctx.exception))

    def test_non_integer_exponent(self):
        with self.assertRaises(ValueError):
            parse_expression("xi^(1/2)")


class LoweringTests(unittest.TestCase):
    def test_dimension_binding(self):
        self.assertEqual(evaluate_constant("n/2 - 1", n=6), GaussianRational(2))
        with self.assertRaises(ValueError):
            evaluate_constant("n")

    def test_functions(self):
        self.assertEqual(evaluate_constant("fact(5)"), GaussianRational(120))
        self.assertEqual(evaluate_constant("C(-2,3)"), GaussianRational(-4))
        self.assertEqual(evaluate_constant("A(5,2)"), GaussianRational(20))
        self.assertEqual(evaluate_constant("C(1,2)"), GaussianRational(0))

    def test_depends_on_xi(self):
        with self.assertRaises(ValueError):
            evaluate_constant("1/(1+xi^2)")

    def test_negative_exponent_forms(self):
        self.assertEqual(parse_expression("(1+xi^2)^-2"), RatFuncXi.one_plus_xi2(-2))
        self.assertEqual(parse_expression("(1+xi^2)^(-2)"), RatFuncXi.one_plus_xi2(-2))

    def test_imaginary_arithmetic(self):
        self.assertEqual(evaluate_constant("(1+i)^2"), 2 * I)
        self.assertEqual(evaluate_constant("-i/8"), GaussianRational(0, Fraction(-1, 8)))


HAND_WRITTEN = (
    "xi/(1+xi^2)^2",
    "(3*xi^2 - 1)/(1+xi^2)^3",
    "i*xi^2/(xi-i)^4 + 1/(xi+i)",
    "xi^3 + 2*xi - i",
    "-i/(4*(xi-i)^2)",
    "0",
    "1",
    "-i",
    "3/7",
    "(1+i)/2",
    "xi",
    "-xi^5",
    "i*xi/(xi-i)",
    "1/(xi-i) - 1/(xi+i)",
    "(xi-i)^-3",
    "(xi+i)^(-4)*xi^2",
    "-i/(16*(xi-i)^2) - 1/(8*(xi-i)^3)",
    "(6*xi^2-2)/(1+xi^2)^3",
    "xi^2/(1+xi^2)",
    "(2*xi^3 - 3*i*xi)/(xi+i)^5",
    "fact(4)*xi/(xi-i)^6",
    "C(-3,2)/(1+xi^2)",
    "A(6,3)*xi^4/(xi+i)^7",
    "(xi^2+1)/(xi-i)",
    "(1-2*i)*xi/(1+xi^2)^4 + (2+i)/(xi-i)^2",
    "(1+xi^2)^2",
    "1/(xi-i)^2/(xi+i)^2",
)


def fixpoint_corpus() -> list[tuple[str, RatFuncXi]]:
    """Hand-written expressions plus every catalog integrand at n = 4, 6, 8."""
    corpus = [(text, parse_expression(text)) for text in HAND_WRITTEN]
    for n in (4, 6, 8):
        for name, spec in sorted(load_catalog().items()):
            corpus.append((f"{name}(n={n})", spec.integrand(n)))
    return corpus


class FormatTests(unittest.TestCase):
    def test_corpus_size(self):
        self.assertGreaterEqual(len(fixpoint_corpus()), 50)

    def test_canonical_text_is_a_fixpoint(self):
        for label, f in fixpoint_corpus():
            with self.subTest(expression=label):
                printed = format_expression(f)
                self.assertEqual(parse_expression(printed), f)
                self.assertEqual(format_expression(parse_expression(printed)), printed)


if __name__ == "__main__":
    unittest.main()
