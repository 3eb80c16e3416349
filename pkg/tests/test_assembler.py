import sys
import unittest
from fractions import Fraction
from pathlib import Path

SRC_DIR = Path(__file__).resolve().parents[1] / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from wres_verifier.arith import I, GaussianRational  # noqa: E402
from wres_verifier.assembler import (  # noqa: E402
    ALTERNATE_PROJECTION,
    THEOREM_CASES,
    Assembler,
    GeometricExpression,
    atom_ratios,
    case_prefactor,
    check_theorem,
    interior_term,
    parse_printed,
)
from wres_verifier.errors import FixtureFormatError, UnknownTheorem  # noqa: E402
from wres_verifier.symbols import Monomial, ScalarAtom  # noqa: E402

T41_N4 = "(pi/4)*Vol(S^{n-2})*( (1/3)*g(XT,YT) + Xn*Yn )"
T41_DERIVED_N4 = "(pi/4)*Vol(S^{n-2})*( -(1/3)*g(XT,YT) + Xn*Yn )"
INTERIOR_N4 = "(4*pi^2/3)*[Ric-s*g/2](X,Y) + pi^2*s*g(X,Y)"


class PrefactorTests(unittest.TestCase):
    def test_values(self):
        self.assertEqual(case_prefactor("A_I"), GaussianRational(-1))
        self.assertEqual(case_prefactor("A_II"), GaussianRational(Fraction(-1, 2)))
        self.assertEqual(case_prefactor("A_III"), GaussianRational(Fraction(-1, 2)))
        for case in ("B", "C", "PSI", "PSI_TILDE"):
            self.assertEqual(case_prefactor(case), -I)

    def test_theorem_names(self):
        self.assertEqual(check_theorem("t31"), "T31")
        with self.assertRaises(UnknownTheorem):
            check_theorem("T99")
        with self.assertRaises(UnknownTheorem):
            check_theorem("T41", "A_II")


class GeometricExpressionTests(unittest.TestCase):
    def test_merge_and_cancel(self):
        m = Monomial.of(G_TT=1, PI=1)
        a = GeometricExpression(((m, GaussianRational(1)),))
        self.assertTrue((a - a).is_zero())
        self.assertEqual((a + a).coefficient(m), GaussianRational(2))
        self.assertEqual(str(GeometricExpression()), "0")

    def test_conditional_propagates(self):
        m = Monomial.of(XNYN=1)
        plain = GeometricExpression(((m, GaussianRational(1)),))
        marked = GeometricExpression(((m, GaussianRational(1)),), conditional=True)
        self.assertTrue((plain + marked).conditional)
        self.assertTrue(plain.same_value(marked))

    def test_imaginary_coefficients_print(self):
        m = Monomial.of(XNYN=1, PI=1)
        self.assertEqual(str(GeometricExpression(((m, -I / 2),))), "-(i*pi/2)*Xn*Yn")
        self.assertEqual(str(GeometricExpression(((m, GaussianRational(1, 2)),))), "(1+2*i)*pi*Xn*Yn")


class InteriorTests(unittest.TestCase):
    def test_n4(self):
        term = interior_term(4)
        self.assertEqual(str(term), INTERIOR_N4)
        self.assertEqual(term.pi_powers(), {2})

    def test_general_n(self):
        # (2 pi)^3 / (3 * 2!) and (2 pi)^3 / (4 * 2!)
        term = interior_term(6)
        self.assertEqual(term.coefficient(Monomial.of(RIC_XY=1, PI=3)), GaussianRational(Fraction(4, 3)))
        self.assertEqual(term.coefficient(Monomial.of(S_G_XY=1, PI=3)), GaussianRational(1))
        with self.assertRaises(ValueError):
            interior_term(5)


class FixtureVariantTests(unittest.TestCase):
    def setUp(self):
        self.assembler = Assembler()

    def test_t41_value(self):
        term = self.assembler.boundary_term("T41", 4)
        self.assertEqual(str(term), T41_N4)
        self.assertEqual(term.coefficient(Monomial.of(VOL=1, PI=1, XNYN=1)), GaussianRational(Fraction(1, 4)))

    def test_statement_matches_case_for_t41(self):
        for n in (4, 6, 8):
            with self.subTest(n=n):
                self.assertTrue(self.assembler.boundary_term("T41", n).same_value(self.assembler.statement("T41", n)))

    def test_every_case_evaluates(self):
        for theorem, cases in THEOREM_CASES.items():
            for case in cases:
                with self.subTest(theorem=theorem, case=case):
                    value = self.assembler.case_term(case, theorem, 6)
                    self.assertLessEqual(value.pi_powers(), {1})

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            self.assembler.case_term("B", "T31", 4, variant="guess")
        with self.assertRaises(ValueError):
            self.assembler.case_term("B", "T31", 5)
        with self.assertRaises(UnknownTheorem):
            self.assembler.case_term("PSI", "T31", 4)


class DerivedVariantTests(unittest.TestCase):
    def setUp(self):
        self.assembler = Assembler()

    def test_tangential_case_vanishes(self):
        for theorem in ("T31", "T32"):
            for n in (4, 6, 8):
                with self.subTest(theorem=theorem, n=n):
                    self.assertTrue(self.assembler.case_term("A_I", theorem, n, "derived").is_zero())
                    self.assertTrue(self.assembler.case_term("A_I", theorem, n, "fixture").is_zero())

    def test_integration_by_parts(self):
        for n in (4, 6, 8):
            for theorem in ("T31", "T32"):
                for case in ("A_II", "A_III", "B", "C"):
                    with self.subTest(n=n, theorem=theorem, case=case):
                        form1 = self.assembler.case_term(case, theorem, n, "derived", form=1)
                        form2 = self.assembler.case_term(case, theorem, n, "derived", form=2)
                        self.assertTrue(form1.same_value(form2), f"{form1} != {form2}")

    def test_single_case_theorems_by_parts(self):
        for n in (4, 6, 8):
            for theorem, case in (("T41", "PSI"), ("T42", "PSI_TILDE")):
                with self.subTest(n=n, theorem=theorem):
                    form1 = self.assembler.case_term(case, theorem, n, "derived", form=1)
                    form2 = self.assembler.case_term(case, theorem, n, "derived", form=2)
                    self.assertTrue(form1.same_value(form2), f"{form1} != {form2}")

    def test_t41_derived_value(self):
        # -i * (pi+ sigma_0) * d/dxi of (1+xi^2)^(-1), traced over rank 2
        term = self.assembler.boundary_term("T41", 4, "derived")
        self.assertEqual(str(term), T41_DERIVED_N4)
        self.assertEqual(term.coefficient(Monomial.of(G_TT=1, VOL=1, PI=1)), GaussianRational(Fraction(-1, 12)))
        self.assertEqual(term.coefficient(Monomial.of(XNYN=1, VOL=1, PI=1)), GaussianRational(Fraction(1, 4)))

    def test_t41_printed_sign_differs_on_tangential_part_only(self):
        parts, factor = atom_ratios(
            self.assembler.case_term("PSI", "T41", 4, "fixture"),
            self.assembler.case_term("PSI", "T41", 4, "derived"),
        )
        self.assertIsNone(factor)
        self.assertEqual(parts, ["g(XT,YT): -1", "Xn*Yn: 1"])

    def test_t31_mixed_case_value(self):
        term = self.assembler.case_term("A_III", "T31", 4, "derived")
        self.assertEqual(term.coefficient(Monomial.of(HP=1, G_TT=1, VOL=1, PI=1)), GaussianRational(Fraction(-5, 48)))
        self.assertEqual(term.coefficient(Monomial.of(HP=1, XNYN=1, VOL=1, PI=1)), GaussianRational(Fraction(5, 16)))
        _, factor = atom_ratios(self.assembler.case_term("A_III", "T31", 4, "fixture"), term)
        self.assertEqual(factor, -I)

    def test_t31_order_minus_n_plus_one_case_value(self):
        # residue of (10 xi^3 + 18 xi)/((xi-i)^5 (xi+i)^3) at n=4
        term = self.assembler.case_term("B", "T31", 4, "derived")
        g_tt = Monomial.of(HP=1, G_TT=1, VOL=1, PI=1)
        self.assertEqual(term.coefficient(g_tt), GaussianRational(Fraction(5, 16)))
        self.assertEqual(term.coefficient(Monomial.of(HP=1, XNYN=1, VOL=1, PI=1)), GaussianRational(Fraction(-15, 16)))
        printed = self.assembler.case_term("B", "T31", 4, "fixture")
        self.assertEqual(printed.coefficient(g_tt) / term.coefficient(g_tt), GaussianRational(Fraction(7, 6)))

    def test_projection_branch_moves_normal_components_only(self):
        for theorem in ("T31", "T41"):
            for n in (4, 6):
                with self.subTest(theorem=theorem, n=n):
                    derived = self.assembler.boundary_term(theorem, n, "derived")
                    alternate = self.assembler.boundary_term(theorem, n, "derived", alternate=True)
                    moved = (derived - alternate).terms
                    self.assertTrue(moved)
                    for monomial, _ in moved:
                        self.assertEqual(monomial.degree(ScalarAtom.XNYN), 1)

    def test_projection_branch_rows(self):
        rows = self.assembler.projection_branches("T31", 4)
        self.assertEqual([r["atoms"] for r in rows], ["XNYN:1"])
        self.assertEqual(rows[0]["derived"], "-i/(2*(xi-i))")
        self.assertEqual(rows[0]["printed"], "-1/(2*(xi-i))")

    def test_values_are_pi_vol_monomials(self):
        term = self.assembler.boundary_term("T31", 4, "derived")
        self.assertFalse(term.is_zero())
        for monomial, _ in term.terms:
            self.assertEqual(monomial.degree(ScalarAtom.PI), 1)
            self.assertEqual(monomial.degree(ScalarAtom.VOL), 1)

    def test_p0_cases_are_conditional(self):
        self.assertTrue(self.assembler.case_term("B", "T32", 4, "derived").conditional)
        self.assertFalse(self.assembler.case_term("B", "T31", 4, "derived").conditional)

    def test_p0_rule_reaches_conditional_case_only(self):
        other = Assembler(p0_rule="coeff=1 atoms=HP:1")
        self.assertTrue(other.case_term("B", "T32", 4, "derived").conditional)
        self.assertTrue(other.case_term("C", "T32", 4, "derived").same_value(self.assembler.case_term("C", "T32", 4, "derived")))


class ReconcileTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.assembler = Assembler()
        cls.t31 = cls.assembler.reconcile("T31", 4)
        cls.t41 = cls.assembler.reconcile("T41", 4)

    def test_structure(self):
        self.assertEqual(self.t31["kind"], "reconcile")
        self.assertEqual(self.t31["columns"], ["fixture", "derived", "derived_alternate", "statement"])
        self.assertEqual([c["case"] for c in self.t31["cases"]], list(THEOREM_CASES["T31"]))
        for entry in self.t31["entries"]:
            for column in self.t31["columns"]:
                self.assertIn(column, entry)
        self.assertEqual(self.t31["diff"], [e for e in self.t31["entries"] if e["disagree"]])

    def test_findings_carry_anchor(self):
        findings = self.t31["findings"]
        self.assertTrue(findings)
        for finding in findings:
            self.assertTrue(finding["anchor"])
        notes = [f for f in findings if f["kind"] == "printed-note"]
        self.assertEqual(len(notes), 1)
        self.assertIn("A0", notes[0]["message"])

    def test_t31_statement_is_the_sum_of_the_cases(self):
        for entry in self.t31["entries"]:
            self.assertNotIn("fixture/statement", entry["disagree"])

    def test_t41_statement_and_fixture_agree(self):
        for entry in self.t41["entries"]:
            self.assertNotIn("fixture/statement", entry["disagree"])
        self.assertEqual(self.t41["values"]["fixture"], T41_N4)
        self.assertFalse(self.t41["conditional_on_p0_rule"])

    def test_projection_branch_finding(self):
        branch = [f for f in self.t31["findings"] if f["kind"] == "aa38-branch"]
        self.assertEqual(len(branch), 1)
        self.assertEqual(branch[0]["anchor"], self.assembler.catalog.get("AA38").anchor)
        self.assertIn("computed -i/(2*(xi-i)), printed -1/(2*(xi-i))", branch[0]["message"])
        self.assertIn("Xn*Yn", branch[0]["message"].split("derived columns differ on ")[1])
        self.assertEqual(len([f for f in self.t41["findings"] if f["kind"] == "aa38-branch"]), 1)

    def test_no_branch_finding_without_alternate_column(self):
        report = self.assembler.reconcile("T31", 4, alternate=False)
        self.assertFalse([f for f in report["findings"] if f["kind"].endswith("-branch")])

    def test_branch_kinds_follow_projection_fixture(self):
        report = self.assembler.reconcile("T42", 4)
        kinds = {f["kind"] for f in report["findings"] if f["kind"].endswith("-branch")}
        self.assertLessEqual(kinds, {f"{ALTERNATE_PROJECTION['T42'].lower()}-branch"})

    def test_alternate_column_differs_on_normal_components_only(self):
        moved = [e for e in self.t31["entries"] if "derived/derived_alternate" in e["disagree"]]
        self.assertTrue(moved)
        for entry in moved:
            with self.subTest(atoms=entry["atoms"]):
                self.assertEqual(Monomial.parse(entry["atoms"]).degree(ScalarAtom.XNYN), 1)

    def test_case_mismatch_findings(self):
        mismatches = {f["subject"]: f for f in self.t31["findings"] if f["kind"] == "case-mismatch"}
        disagreeing = [c for c in self.t31["cases"] if not c["agree"]]
        self.assertEqual(set(mismatches), {f"T31(n=4) {c['case']}" for c in disagreeing})
        self.assertIn("printed case = -i * derived case", mismatches["T31(n=4) A_III"]["message"])
        self.assertEqual(mismatches["T31(n=4) A_III"]["anchor"], "mixed-derivative case")
        t41 = [f for f in self.t41["findings"] if f["kind"] == "case-mismatch"]
        self.assertEqual([f["message"] for f in t41], ["printed/derived per atom: g(XT,YT): -1, Xn*Yn: 1"])

    def test_t41_columns_split_on_tangential_sign(self):
        self.assertEqual(self.t41["values"]["derived"], T41_DERIVED_N4)
        disagreeing = {e["atoms"] for e in self.t41["entries"] if "fixture/derived" in e["disagree"]}
        self.assertEqual(disagreeing, {Monomial.of(G_TT=1, VOL=1, PI=1).to_text()})

    def test_without_alternate_column(self):
        report = self.assembler.reconcile("T42", 4, alternate=False)
        self.assertEqual(report["columns"], ["fixture", "derived", "statement"])

    def test_conditional_theorem(self):
        self.assertTrue(self.assembler.reconcile("T32", 4, alternate=False)["conditional_on_p0_rule"])


class PrintedFormatTests(unittest.TestCase):
    def test_parse(self):
        printed = parse_printed(
            'theorem t99\nanchor "top"\nsection case X\nanchor "x"\nterm coeff=n/2 atoms=PI:1 uses=B0\n'
            "section statement\nterm coeff=1\nflag \"note\"\n"
        )
        self.assertEqual(printed.theorem, "T99")
        self.assertEqual(printed.case("X").anchor, "x")
        self.assertEqual(printed.case("X").uses(), ("B0",))
        self.assertEqual(printed.flags, ("note",))
        value = printed.case("X").evaluate(4)
        self.assertEqual(value.coefficient(Monomial.of(PI=1)), GaussianRational(Fraction(-15, 4)))
        with self.assertRaises(UnknownTheorem):
            printed.case("Y")

    def test_errors(self):
        cases = {
            "theorem T1\nterm coeff=1\n": 2,
            "theorem T1\nsection other X\n": 2,
            "theorem T1\nsection case X\nterm atoms=PI:1\n": 3,
            "theorem T1\nsection case X\nterm coeff=1 atoms=NOPE:1\n": 3,
            "theorem T1\nwhatever\n": 2,
        }
        for text, line in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(FixtureFormatError) as ctx:
                    parse_printed(text)
                self.assertEqual(ctx.exception.line, line)
        with self.assertRaises(FixtureFormatError):
            parse_printed("section statement\n")


if __name__ == "__main__":
    unittest.main()
