"""
Tests for project layout, configuration loading and the sample signals
"""

import sys
import tempfile
import unittest
from pathlib import Path

import numpy as np

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from scripts.generate_sample_signals import SampleSignalGenerator
from src.config_loader import DEFAULTS, load_config
from src.errors import RamanujanError
from src.signal_io import read_signal

PROJECT_ROOT = Path(__file__).parent.parent


class TestProjectCompleteness(unittest.TestCase):
    """Required project components are present"""

    def test_required_files(self):
        required_components = {
            'Configuration': ['config/ramanujan.yaml'],
            'Sample Signals': ['data/constant.txt', 'data/step.txt', 'data/ramp.txt', 'data/quadratic.txt'],
            'Python Modules': ['src/ramanujan_sums.py', 'src/ramanujan_operators.py', 'src/ramanujan_algebra.py',
                               'src/signal_io.py', 'src/benchmark.py', 'src/verification.py', 'src/main_cli.py'],
            'Documentation': ['README.md', 'requirements.txt'],
        }
        for category, files in required_components.items():
            missing = [f for f in files if not (PROJECT_ROOT / f).exists()]
            self.assertEqual(missing, [], f"{category} missing: {', '.join(missing)}")

    def test_shipped_ramp_signal(self):
        ramp = read_signal(PROJECT_ROOT / "data" / "ramp.txt")
        np.testing.assert_array_equal(ramp.samples, np.arange(32))


class TestConfigLoader(unittest.TestCase):
    """YAML configuration merged over defaults"""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def test_shipped_config_matches_defaults(self):
        self.assertEqual(load_config(), DEFAULTS)

    def test_partial_override(self):
        path = self.tmp / "override.yaml"
        path.write_text("verification:\n  q_max: 40\n  algebra:\n    coprime_factor_max: 10\n")
        config = load_config(path)
        self.assertEqual(config["verification"]["q_max"], 40)
        self.assertEqual(config["verification"]["algebra"]["coprime_factor_max"], 10)
        self.assertEqual(config["verification"]["algebra"]["multiplicative_pq_max"], 2500)
        self.assertEqual(config["tolerances"], DEFAULTS["tolerances"])

    def test_empty_file_gives_defaults(self):
        path = self.tmp / "empty.yaml"
        path.write_text("")
        self.assertEqual(load_config(path), DEFAULTS)

    def test_defaults_not_shared(self):
        config = load_config()
        config["verification"]["q_max"] = 1
        self.assertEqual(DEFAULTS["verification"]["q_max"], 200)

    def test_invalid_files(self):
        malformed = self.tmp / "bad.yaml"
        malformed.write_text("verification: [unclosed\n")
        scalar = self.tmp / "scalar.yaml"
        scalar.write_text("42\n")
        for path in (malformed, scalar, self.tmp / "missing.yaml"):
            with self.assertRaises(RamanujanError):
                load_config(path)


class TestSampleSignals(unittest.TestCase):
    """Sample signal generation script"""

    def test_write_and_validate(self):
        with tempfile.TemporaryDirectory() as tmp:
            generator = SampleSignalGenerator(data_dir=tmp, length=16)
            written = generator.write_all()
            self.assertEqual(sorted(p.name for p in written),
                             ["constant.txt", "quadratic.txt", "ramp.txt", "step.txt"])
            self.assertTrue(generator.validate_setup())

            step = read_signal(Path(tmp) / "step.txt").samples
            np.testing.assert_array_equal(step, [0.0] * 8 + [1.0] * 8)
            quadratic = read_signal(Path(tmp) / "quadratic.txt").samples
            self.assertEqual(quadratic[-1], 225.0)

    def test_validate_reports_missing(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.assertFalse(SampleSignalGenerator(data_dir=tmp).validate_setup())


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    test_suite = unittest.TestSuite()
    for case in (TestProjectCompleteness, TestConfigLoader, TestSampleSignals):
        test_suite.addTest(loader.loadTestsFromTestCase(case))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(test_suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    if not run_tests():
        sys.exit(1)
