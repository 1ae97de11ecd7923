import unittest
import sys
import os
import io
import json
import tempfile
from unittest.mock import patch

from pydantic import ValidationError

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src import settings_manager
from src import verify_runner
from src.verify_runner import (
    CHECK_NAMES,
    CheckResult,
    RunReport,
    VerifyCheck,
    render_json,
    render_text,
    run_check,
    run_checks,
    run_verify,
    save_report,
)


def _failing(max_n, jobs, found):
    found.cover(2)
    found.fail("n=2 F(21): got 1, expected 1+q")


class TestModels(unittest.TestCase):
    def test_check_names(self):
        self.assertEqual(len(CHECK_NAMES), 10)
        self.assertEqual(set(CHECK_NAMES), set(verify_runner.CHECKS))

    def test_bounds_validated(self):
        with self.assertRaises(ValidationError):
            VerifyCheck(name="table1", max_n=1)
        with self.assertRaises(ValidationError):
            VerifyCheck(name="thm9.9", max_n=5)

    def test_default_bound_from_settings(self):
        check = VerifyCheck.with_default_bound("sanity")
        self.assertEqual(check.max_n, settings_manager.default_max_n("sanity"))
        self.assertEqual(VerifyCheck.with_default_bound("sanity", 4).max_n, 4)

    def test_failure_needs_counterexample(self):
        with self.assertRaises(ValidationError):
            CheckResult(name="sanity", status="fail", max_n=3)
        CheckResult(name="sanity", status="fail", max_n=3, counterexample="n=1")

    def test_report_summary(self):
        report = RunReport()
        report.add(CheckResult(name="sanity", status="pass", max_n=3))
        self.assertTrue(report.passed)
        report.add(CheckResult(name="table1", status="fail", max_n=5, counterexample="n=4"))
        self.assertFalse(report.passed)
        self.assertEqual(
            (report.summary.checks_run, report.summary.passed, report.summary.failed), (2, 1, 1)
        )


class TestChecks(unittest.TestCase):
    def test_barred_classes(self):
        result = run_check(VerifyCheck(name="prop3.5", max_n=5))
        self.assertEqual(result.status, "pass")
        self.assertEqual((result.n_min, result.n_max), (0, 5))
        self.assertIsNone(result.counterexample)

    def test_tabulated_rows(self):
        result = run_check(VerifyCheck(name="table1", max_n=5))
        self.assertEqual(result.status, "pass")
        self.assertEqual((result.n_min, result.n_max), (4, 5))
        self.assertIn("8 tabulated polynomials compared", result.notes)

    def test_tabulated_rows_below_the_table(self):
        result = run_check(VerifyCheck(name="table1", max_n=3))
        self.assertEqual(result.status, "pass")
        self.assertIsNone(result.n_min)
        self.assertEqual(result.notes, ["no tabulated rows at this bound"])

    def test_small_bounds_pass(self):
        for name, max_n in (
            ("conj4.1", 5),
            ("thm3.2", 5),
            ("prop3.3", 5),
            ("thm3.4", 5),
            ("conj4.2", 5),
            ("w2-sortable", 5),
            ("sanity", 3),
        ):
            with self.subTest(check=name):
                result = run_check(VerifyCheck(name=name, max_n=max_n))
                self.assertEqual(result.status, "pass", result.counterexample)

    def test_known_deviations_reported_separately(self):
        result = run_check(VerifyCheck(name="thm3.2", max_n=6))
        self.assertEqual(result.status, "pass", result.counterexample)
        self.assertTrue(any(d.startswith("n=6: beta(alpha(") for d in result.deviations), result.deviations)
        self.assertFalse(any("beta(alpha(" in note for note in result.notes))

        report = RunReport()
        report.add(result)
        buffer = io.StringIO()
        render_text(report, file=buffer)
        self.assertIn("DEVIATION", buffer.getvalue())

    def test_counterexample_recorded(self):
        with patch.dict(verify_runner.CHECKS, {"sanity": _failing}):
            result = run_check(VerifyCheck(name="sanity", max_n=3))
        self.assertEqual(result.status, "fail")
        self.assertEqual(result.counterexample, "n=2 F(21): got 1, expected 1+q")


class TestRunner(unittest.TestCase):
    def test_order_and_summary(self):
        checks = [VerifyCheck(name="prop3.5", max_n=4), VerifyCheck(name="table1", max_n=4)]
        report = run_checks(checks, show_progress=False)
        self.assertEqual([r.name for r in report.details], ["prop3.5", "table1"])
        self.assertTrue(report.passed)
        self.assertIsNotNone(report.last_run)

    def test_single_check_report(self):
        report = run_verify(VerifyCheck(name="prop3.5", max_n=3))
        self.assertEqual(report.summary.checks_run, 1)
        self.assertEqual(report.details[0].status, "pass")

    def test_progress_bar_run(self):
        with patch.dict(verify_runner.CHECKS, {"sanity": _failing}):
            report = run_checks([VerifyCheck(name="sanity", max_n=3)], show_progress=True)
        self.assertFalse(report.passed)

    def test_json_is_deterministic(self):
        checks = [VerifyCheck(name="prop3.5", max_n=5), VerifyCheck(name="table1", max_n=5)]
        first = render_json(run_checks(checks, jobs=1, show_progress=False))
        second = render_json(run_checks(checks, jobs=2, show_progress=False))
        self.assertEqual(first, second)
        payload = json.loads(first)
        self.assertNotIn("last_run", payload)
        self.assertNotIn("wall_time_s", payload["details"][0])
        self.assertEqual(payload["summary"], {"checks_run": 2, "passed": 2, "failed": 0})

    def test_json_with_timings(self):
        report = run_checks([VerifyCheck(name="prop3.5", max_n=3)], show_progress=False)
        payload = json.loads(render_json(report, timings=True))
        self.assertIn("last_run", payload)
        self.assertIn("wall_time_s", payload["details"][0])

    def test_text_table(self):
        report = run_checks([VerifyCheck(name="prop3.5", max_n=3)], show_progress=False)
        buffer = io.StringIO()
        render_text(report, file=buffer)
        text = buffer.getvalue()
        self.assertIn("prop3.5", text)
        self.assertIn("PASS", text)
        self.assertIn("1 check(s): 1 passed, 0 failed", text)

    def test_save_report(self):
        report = run_checks([VerifyCheck(name="prop3.5", max_n=3)], show_progress=False)
        with tempfile.TemporaryDirectory() as tmp:
            path = save_report(report, os.path.join(tmp, "reports"))
            self.assertTrue(path.exists())
            saved = json.loads(path.read_text())
        self.assertEqual(saved["summary"]["passed"], 1)
        self.assertIn("last_run", saved)


if __name__ == "__main__":
    unittest.main()
