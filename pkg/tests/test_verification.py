"""
Unit Tests for the verification pipeline
"""

import json
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config_loader import load_config
from src.ramanujan_algebra import SweepSummary
from src.verification import VerificationPipeline


class TestVerificationPipeline(unittest.TestCase):
    """Suites run end to end at a small q_max"""

    @classmethod
    def setUpClass(cls):
        config = load_config()
        config["verification"]["random_oracle"]["count"] = 20
        cls.config = config
        cls.pipeline = VerificationPipeline(config)
        cls.results = cls.pipeline.run(16)

    def test_all_suites_pass(self):
        self.assertEqual([r.name for r in self.results], ["core", "prime-powers", "derivatives", "algebra"])
        for result in self.results:
            self.assertTrue(result.passed, [(c.name, c.observed) for c in result.failures])
        self.assertTrue(self.pipeline.passed)

    def test_operator_properties_checked(self):
        derivatives = {c.name: c for c in self.results[2].checks}
        for name in ("linearity q<=16", "wrap shift invariance q<=16"):
            self.assertIn(name, derivatives)
            self.assertTrue(derivatives[name].passed, derivatives[name].observed)

    def test_summary_frame(self):
        frame = self.pipeline.summary_frame()
        self.assertEqual(list(frame.columns), ["suite", "check", "expected", "passed"])
        self.assertEqual(len(frame), sum(len(r.checks) for r in self.results))
        self.assertTrue(frame["check"].str.contains("shift prediction \\(printed, recorded\\)").any())

    def test_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "report.json"
            self.pipeline.generate_report(path)
            report = json.loads(path.read_text())
        self.assertTrue(report["report_metadata"]["passed"])
        self.assertEqual(report["report_metadata"]["q_max"], 16)
        self.assertEqual(len(report["suites"]), 4)

    def test_suite_error_is_recorded(self):
        pipeline = VerificationPipeline(self.config)
        with patch.object(VerificationPipeline, "algebra_checks", side_effect=RuntimeError("boom")):
            results = pipeline.run(4)
        self.assertFalse(pipeline.passed)
        failed = results[-1]
        self.assertEqual(failed.name, "algebra")
        self.assertIn("boom", failed.failures[0].observed)


class TestVerificationBounds(unittest.TestCase):
    """Algebra and prime-power limits per q_max"""

    def setUp(self):
        self.pipeline = VerificationPipeline(load_config())

    def test_bounds_shrink_below_reference(self):
        self.assertEqual(self.pipeline.bounds(12), {"prime_power": 600, "multiplicative": 150, "sweep": 36})
        self.assertEqual(self.pipeline.bounds(200), {"prime_power": 10000, "multiplicative": 2500, "sweep": 600})

    def test_bounds_capped_above_reference(self):
        self.assertEqual(self.pipeline.bounds(1000), {"prime_power": 10000, "multiplicative": 2500, "sweep": 600})

    def test_large_q_max_sweeps_at_configured_bound(self):
        with patch("src.verification.sweep_products", return_value=SweepSummary(limit=600)) as sweep, \
                patch("src.verification.check_multiplicative", return_value=[]) as multiplicative:
            checks = self.pipeline.algebra_checks(1000)
        sweep.assert_called_once_with(600)
        multiplicative.assert_called_once_with(2500)
        self.assertTrue(all(c.passed for c in checks))


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    test_suite = unittest.TestSuite()
    for case in (TestVerificationPipeline, TestVerificationBounds):
        test_suite.addTest(loader.loadTestsFromTestCase(case))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(test_suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    if not run_tests():
        sys.exit(1)
