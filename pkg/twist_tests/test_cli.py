import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr
from contextlib import redirect_stdout
from pathlib import Path

from twists.cli import main


class CLITests(unittest.TestCase):
    def _run(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_star_closed_form(self):
        code, out, _ = self._run(
            "star", "--u", "0", "--a", "1/10,0", "--k", "1,2", "--q", "3,-1"
        )
        self.assertEqual(0, code)
        self.assertEqual("37/10, 11/10", out.strip())

    def test_star_u1(self):
        code, out, _ = self._run(
            "star", "--u", "1", "--a", "1/10,0", "--k", "1,2", "--q", "3,-1"
        )
        self.assertEqual(0, code)
        self.assertEqual("43/10, 8/5", out.strip())

    def test_star_cross_check(self):
        code, out, _ = self._run(
            "star", "--u", "1/2", "--a", "1/10,0", "--k", "1,2", "--q", "3,-1", "--cross-check"
        )
        self.assertEqual(0, code)
        self.assertIn("via-twist: unsupported", out)
        self.assertIn("max deviation", out)

    def test_star_singular_input(self):
        code, _, err = self._run(
            "star", "--u", "1/2", "--a", "1,0", "--k", "2,0", "--q", "-2,0"
        )
        self.assertEqual(1, code)
        self.assertIn("Singular input", err)

    def test_star_negative_leading_components(self):
        code, out, _ = self._run(
            "star", "--u", "-1/3", "--a", "-1/10,0", "--k", "-1,2", "--q", "-3,-1"
        )
        self.assertEqual(0, code)
        self.assertEqual(2, len(out.strip().split(",")))

    def test_negative_values_keep_other_flags(self):
        from twists.cli import _attach_negative_values

        self.assertEqual(
            ["star", "--q=-2,0", "--k", "1,2", "--cross-check"],
            _attach_negative_values(["star", "--q", "-2,0", "--k", "1,2", "--cross-check"]),
        )

    def test_star_dimension_from_momenta(self):
        code, out, _ = self._run("star", "--k", "1,2,3", "--q", "3,-1,1/2")
        self.assertEqual(0, code)
        self.assertEqual(3, len(out.strip().split(",")))

    def test_star_dimension_mismatch(self):
        code, _, err = self._run("star", "--a", "1/10,0", "--k", "1,2,3", "--q", "3,-1")
        self.assertEqual(2, code)
        self.assertIn("usage error", err)

    def test_verify_order_too_low(self):
        code, _, err = self._run("verify", "cocycle", "--order", "0")
        self.assertEqual(2, code)
        self.assertIn("order", err)

    def test_unknown_suite(self):
        code, _, _ = self._run("verify", "bogus")
        self.assertEqual(2, code)

    def test_verify_text(self):
        code, out, _ = self._run("verify", "coboundary", "--u", "0,1", "--order", "2")
        self.assertEqual(0, code)
        lines = out.strip().splitlines()
        self.assertTrue(lines[0].startswith("PASS coboundary u=0 N=2"))
        self.assertEqual("2 passed, 0 failed", lines[-1])

    def test_verify_json_and_report(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            out_file = Path(tmp_dir) / "reports" / "normalization.json"
            code, _, _ = self._run(
                "verify",
                "normalization",
                "--u",
                "0,1/2",
                "--order",
                "2",
                "--format",
                "json",
                "--output",
                str(out_file),
            )
            self.assertEqual(0, code)
            reports = json.loads(out_file.read_text(encoding="utf-8"))
            self.assertEqual(4, len(reports))
            first = reports[0]
            self.assertEqual(
                {"identity", "u", "order", "pass", "residual", "ms"}, set(first)
            )
            self.assertEqual("normalization", first["identity"])
            self.assertEqual("0", first["u"])
            self.assertIs(True, first["pass"])
            self.assertEqual("0", first["residual"])

            code, out, _ = self._run("report", str(out_file))
            self.assertEqual(0, code)
            self.assertIn("PASS inverse u=1/2 N=2", out)

    def test_report_missing_file(self):
        code, _, err = self._run("report", "/nonexistent/reports.json")
        self.assertEqual(2, code)
        self.assertIn("usage error", err)

    def test_expand_twist(self):
        code, out, _ = self._run("expand", "--u", "0", "--order", "2", "--component", "twist")
        self.assertEqual(0, code)
        lines = out.strip().splitlines()
        self.assertEqual(["# u=0 N=2", "== F_u =="], lines[:2])
        self.assertEqual("1⊗1 - A⊗D + 1/2 A^2⊗D + 1/2 A^2⊗D^2", lines[2])

    def test_expand_log(self):
        code, out, _ = self._run("expand", "--u", "1/2", "--order", "3", "--component", "log")
        self.assertEqual(0, code)
        self.assertIn("== ln F_u ==", out)
        body = out.strip().splitlines()[2]
        self.assertTrue(body.startswith("1/2 D⊗A - 1/2 A⊗D"), body)

    def test_expand_coordinates(self):
        code, out, _ = self._run(
            "expand", "--u", "0", "--order", "1", "--v", "1,0", "--component", "coordinates"
        )
        self.assertEqual(0, code)
        self.assertIn("== x̂0 ==", out)
        self.assertIn("== ŷ1 ==", out)

    def test_expand_rejects_several_u(self):
        code, _, err = self._run("expand", "--u", "0,1")
        self.assertEqual(2, code)
        self.assertIn("exactly one u", err)


if __name__ == "__main__":
    unittest.main()
