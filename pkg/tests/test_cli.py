import io
import json
import sys
import tempfile
import unittest
from pathlib import Path

SRC_DIR = Path(__file__).resolve().parents[1] / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from wres_verifier.cli import (  # noqa: E402
    EXIT_OK,
    EXIT_USAGE,
    run_command,
)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run_command(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


class ValueCommandTests(unittest.TestCase):
    def test_coefficient(self):
        self.assertEqual(run("coeff", "B0", "--n", "4"), (EXIT_OK, "-15/8\n", ""))
        self.assertEqual(run("coeff", "E2", "--n", "4", "--closed")[1], "-45\n")

    def test_pi_plus(self):
        self.assertEqual(run("piplus", "xi/(1+xi^2)^2")[1], "-i/(4*(xi-i)^2)\n")

    def test_residue(self):
        self.assertEqual(run("residue", "1/(1+xi^2)", "--at", "i")[1], "-i/2\n")

    def test_boundary(self):
        status, out, _ = run("boundary", "--theorem", "t41", "--n", "4")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out, "(pi/4)*Vol(S^{n-2})*( (1/3)*g(XT,YT) + Xn*Yn )\n")

    def test_boundary_cases(self):
        status, out, _ = run("boundary", "--theorem", "T31", "--n", "4", "--cases")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("T31[A_I](n=4) fixture: 0", out)

    def test_interior(self):
        self.assertEqual(run("interior", "--n", "4")[1], "(4*pi^2/3)*[Ric-s*g/2](X,Y) + pi^2*s*g(X,Y)\n")


class UsageErrorTests(unittest.TestCase):
    def test_exit_codes(self):
        cases = (
            ("coeff", "B0", "--n", "5"),
            ("coeff", "Z9", "--n", "4"),
            ("piplus", "xi/("),
            ("boundary", "--theorem", "T99", "--n", "4"),
            ("fixtures", "--show", "NOPE"),
            ("verify-coeffs", "--n", "4", "--nodes", "2"),
            ("interior",),
        )
        for argv in cases:
            with self.subTest(argv=argv):
                status, out, err = run(*argv)
                self.assertEqual(status, EXIT_USAGE)
                self.assertEqual(out, "")
                self.assertTrue(err)

    def test_syntax_error_reports_offset(self):
        self.assertIn("offset 4", run("piplus", "xi/(")[2])


class ReportCommandTests(unittest.TestCase):
    def test_json_is_deterministic(self):
        argv = ("reconcile", "--theorem", "T41", "--n", "4", "--format", "json")
        first, second = run(*argv), run(*argv)
        self.assertEqual(first, second)
        data = json.loads(first[1])
        self.assertEqual(data["records"][0]["kind"], "reconcile")
        self.assertIn("p0_provenance", data["config"])
        self.assertIn("aa38-branch", {f["kind"] for f in data["findings"]})

    def test_verify_coefficients(self):
        status, out, _ = run("verify-coeffs", "--n", "4", "--nodes", "128", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(len(data["records"]), 24)
        self.assertTrue(any(f["subject"] == "E2(n=4)" for f in data["findings"]))

    def test_fixture_listing(self):
        status, out, _ = run("fixtures")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(len(out.splitlines()), 29)
        self.assertTrue(run("fixtures", "--show", "C7")[1].startswith("fixture C7\n"))

    def test_check_fixtures_plain(self):
        status, out, _ = run("check-fixtures", "--n", "4")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("d_xn(L24_D2)->B27", out)
        self.assertIn("findings:", out)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp, "report.tex")
            status, out, _ = run("interior", "--n", "6", "--format", "latex", "--output", str(target))
            self.assertEqual(status, EXIT_OK)
            self.assertEqual(out, "")
            self.assertIn("\\begin{tabular}", target.read_text(encoding="utf-8"))


if __name__ == "__main__":
    unittest.main()
