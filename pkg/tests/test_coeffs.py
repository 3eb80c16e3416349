import sys
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

SRC_DIR = Path(__file__).resolve().parents[1] / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from mpmath import mp  # noqa: E402

from wres_verifier.arith import GaussianRational  # noqa: E402
from wres_verifier.coeffs import (  # noqa: E402
    HAND_CHECKED,
    coefficient_closed_form,
    coefficient_defining,
    coefficient_findings,
    coefficient_names,
    coefficient_numeric,
    engine_consistent,
    get_spec,
    load_catalog,
    verify_coefficient,
    verify_coefficients,
)
from wres_verifier.errors import UnknownCoefficient  # noqa: E402

ANCHORS = {
    "B0": GaussianRational(Fraction(-15, 8)),
    "M0": GaussianRational(0, Fraction(-1, 8)),
    "H0": GaussianRational(0, Fraction(3, 4)),
    "N1": GaussianRational(Fraction(3, 8)),
}


class CatalogTests(unittest.TestCase):
    def test_names(self):
        names = coefficient_names()
        self.assertEqual(len(names), 24)
        self.assertEqual(names, sorted(names))
        for name in HAND_CHECKED:
            self.assertIn(name, names)

    def test_unknown(self):
        with self.assertRaises(UnknownCoefficient):
            get_spec("Z9")
        with self.assertRaises(KeyError):
            coefficient_defining("Z9", 4)

    def test_dimension_checked(self):
        for n in (2, 5, 7):
            with self.subTest(n=n):
                with self.assertRaises(ValueError):
                    coefficient_defining("B0", n)

    def test_custom_catalog(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp, "c.toml")
            path.write_text('[X]\nnumerator = "1"\npole_power = "1"\norder = "1"\nclosed = "-1/(2*i)^2"\n', encoding="utf-8")
            catalog = load_catalog(path)
            self.assertEqual(list(catalog), ["X"])
            self.assertEqual(catalog["X"].derivative_order(4), 1)
            self.assertIsNone(catalog["X"].closed_alternate)


class ValueTests(unittest.TestCase):
    def test_hand_checked_values(self):
        for name, expected in ANCHORS.items():
            with self.subTest(name=name):
                self.assertEqual(coefficient_defining(name, 4), expected)
                self.assertEqual(coefficient_closed_form(name, 4), expected)

    def test_e2_readings(self):
        self.assertEqual(coefficient_closed_form("E2", 4), GaussianRational(-45))
        self.assertEqual(coefficient_closed_form("E2", 4, alternate=True), coefficient_defining("E2", 4))
        self.assertIsNone(coefficient_closed_form("B0", 4, alternate=True))

    def test_numeric_path(self):
        numeric = coefficient_numeric("M0", 6, precision_bits=256, nodes=128)
        self.assertLess(numeric.relative_error(coefficient_defining("M0", 6)), 1e-30)

    def test_record(self):
        record = verify_coefficient("B0", 4, nodes=128)
        self.assertTrue(record.defining_vs_numeric_ok)
        self.assertTrue(record.closed_matches_defining)
        data = record.to_dict()
        self.assertEqual(data["kind"], "coefficient")
        self.assertEqual(data["defining"], "-15/8")
        self.assertNotIn("closed_alternate", data)


class VerificationTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.records = verify_coefficients(ns=[4], nodes=128)

    def test_grid(self):
        self.assertEqual(len(self.records), 24)
        self.assertEqual([r.name for r in self.records], coefficient_names())
        self.assertTrue(all(r.defining_vs_numeric_ok for r in self.records))
        self.assertTrue(engine_consistent(self.records))

    def test_e2_findings(self):
        findings = [f for f in coefficient_findings(self.records) if f["subject"] == "E2(n=4)"]
        kinds = {f["kind"] for f in findings}
        self.assertEqual(kinds, {"closed-form", "internal-inconsistency"})
        closed = next(f for f in findings if f["kind"] == "closed-form")
        self.assertIn("alternate reading matches", closed["message"])
        self.assertTrue(closed["anchor"])

    def test_anchors_quote_the_defining_bracket(self):
        for record in self.records:
            with self.subTest(name=record.name):
                self.assertTrue(record.anchor.startswith(f"{record.name[0]}_{record.name[1]}&=\\left["))

    def test_hand_checked_mismatch_is_inconsistent(self):
        record = next(r for r in self.records if r.name == "B0")
        broken = record.__class__(**{**record.__dict__, "closed_matches_defining": False})
        self.assertFalse(engine_consistent([broken]))


class DimensionSweepTests(unittest.TestCase):
    """All names over n = 4..12; 128 nodes put the quadrature error near 4^-128."""

    DIMENSIONS = (4, 6, 8, 10, 12)
    CLOSED_FORM_NAMES = ("B0", "M0", "H0", "N1", "D0", "D1", "D2", "H1", "E0", "E1")

    @classmethod
    def setUpClass(cls):
        cls.records = verify_coefficients(ns=cls.DIMENSIONS, nodes=128)
        cls.findings = coefficient_findings(cls.records)

    def test_defining_matches_numeric(self):
        self.assertEqual(len(self.records), 24 * len(self.DIMENSIONS))
        for record in self.records:
            with self.subTest(name=record.name, n=record.n):
                self.assertTrue(record.defining_vs_numeric_ok, mp.nstr(record.relative_error, 5))

    def test_closed_form_matches_or_is_reported(self):
        reported = {f["subject"] for f in self.findings if f["kind"] == "closed-form"}
        for record in self.records:
            if record.name not in self.CLOSED_FORM_NAMES or record.n > 10:
                continue
            with self.subTest(name=record.name, n=record.n):
                subject = f"{record.name}(n={record.n})"
                if record.closed_matches_defining:
                    self.assertNotIn(subject, reported)
                else:
                    self.assertIn(subject, reported)

    def test_hand_checked_closed_forms_hold_in_every_dimension(self):
        for record in self.records:
            if record.name in ("B0", "M0"):
                with self.subTest(name=record.name, n=record.n):
                    self.assertTrue(record.closed_matches_defining)


if __name__ == "__main__":
    unittest.main()
