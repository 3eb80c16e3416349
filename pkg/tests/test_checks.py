import sys
import tempfile
import unittest
from pathlib import Path

SRC_DIR = Path(__file__).resolve().parents[1] / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from wres_verifier.checks import (  # noqa: E402
    CHECKS,
    FixtureCheck,
    check_findings,
    run_check,
    run_checks,
)
from wres_verifier.symbols import FixtureCatalog  # noqa: E402

EXPECTED = {
    "pi_plus(L24_D2)->AA38": "mismatch",
    "d_xn(L24_D2)->B27": "ok",
    "pi_plus(B27)->B28": "mismatch",
    "d_xin2(AA38)->MMMMM": "mismatch",
    "d_xin(AA38)->E45": "mismatch",
    "d_xin2(L22_M2_POW)->B237": "ok",
    "d_xn(L22_M2_POW)->E37": "ok",
    "d_xin(L22_M2_POW)->E62": "ok",
    "d_xn(L24_D1)->C8": "mismatch",
    "pi_plus(L24_D1)->C38": "mismatch",
    "d_xin(C38)->C25": "mismatch",
    "d_xin2(C38)->C14": "ok",
    "d_xn(C7)->C13": "ok",
    "d_xin(C7)->C20": "ok",
    "pi_plus(E65)->E65": "mismatch",
    "L21_S2*L22_M2->L24_D2": "ok",
    "L21_S2*L23_M1->L24_D1": "ok",
}


class CorpusCheckTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.results = {r.check.name: r for r in run_checks(4)}

    def test_every_check_ran(self):
        self.assertEqual(set(self.results), set(EXPECTED))
        self.assertEqual(len(CHECKS), len(EXPECTED))

    def test_statuses(self):
        for name, status in EXPECTED.items():
            with self.subTest(check=name):
                result = self.results[name]
                self.assertEqual(result.status, status, result.rows)
                self.assertTrue(result.anchor)
                if status == "ok":
                    self.assertEqual(result.rows, [])
                else:
                    self.assertTrue(result.rows)

    def test_findings(self):
        findings = check_findings(list(self.results.values()))
        self.assertEqual(len(findings), sum(1 for s in EXPECTED.values() if s != "ok"))
        self.assertTrue(all(f["kind"] == "fixture-mismatch" for f in findings))
        self.assertIn("pi_plus(E65)->E65(n=4)", {f["subject"] for f in findings})

    def test_selection_by_target(self):
        results = run_checks(4, names=["C13"])
        self.assertEqual([r.check.name for r in results], ["d_xn(C7)->C13"])
        self.assertEqual(results[0].to_dict()["kind"], "fixture-check")

    def test_other_dimension(self):
        self.assertEqual(run_check(CHECKS[1], n=6).status, "ok")


class UnderivableTests(unittest.TestCase):
    def test_missing_rule_is_reported(self):
        with tempfile.TemporaryDirectory() as tmp:
            Path(tmp, "S.fix").write_text("fixture S\norder 0\nterm coeff=1 atoms=G_TT:1\n", encoding="utf-8")
            Path(tmp, "T.fix").write_text('fixture T\nanchor "target"\norder none\n', encoding="utf-8")
            result = run_check(FixtureCheck("S", "d_xn", "T"), 4, FixtureCatalog(Path(tmp)))
        self.assertEqual(result.status, "underivable")
        self.assertIn("G_TT", result.message)
        self.assertEqual(check_findings([result])[0]["kind"], "fixture-underivable")


if __name__ == "__main__":
    unittest.main()
