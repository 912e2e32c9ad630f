"""
Sample Signal Generator for the Ramanujan Operators library
Writes the ramp, step, constant and quadratic test signals into data/
"""

import logging
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config_loader import load_config
from src.ramanujan_operators import Signal
from src.signal_io import write_signal

# Setup logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


class SampleSignalGenerator:
    def __init__(self, data_dir=None, length=32):
        """
        Initialize the generator

        Args:
            data_dir (str or Path, optional): Output directory, defaults to data/
            length (int): Samples per signal
        """
        self.project_root = Path(__file__).parent.parent
        self.data_dir = Path(data_dir) if data_dir else self.project_root / "data"
        self.length = length

    def build_signals(self):
        """Test signals keyed by file stem"""
        n = np.arange(self.length, dtype=np.float64)
        return {
            "constant": Signal(np.full(self.length, 5.0)),
            "step": Signal((n >= self.length // 2).astype(np.float64)),
            "ramp": Signal(n),
            "quadratic": Signal(n ** 2),
        }

    def write_all(self):
        """Write every signal, returning the paths written"""
        self.data_dir.mkdir(parents=True, exist_ok=True)
        written = []
        for name, signal in self.build_signals().items():
            path = self.data_dir / f"{name}.txt"
            write_signal(signal, path)
            written.append(path)
        logger.info(f"Wrote {len(written)} sample signals to {self.data_dir}")
        return written

    def validate_setup(self):
        """Check the configuration loads and every sample exists"""
        try:
            load_config()
        except Exception as e:
            logger.error(f"Configuration invalid: {e}")
            return False

        missing = [name for name in self.build_signals() if not (self.data_dir / f"{name}.txt").exists()]
        if missing:
            logger.error(f"Missing sample signals: {', '.join(missing)}")
            return False
        return True


def main():
    """Main function to generate the sample signals"""
    generator = SampleSignalGenerator()
    generator.write_all()
    if not generator.validate_setup():
        sys.exit(1)


if __name__ == "__main__":
    main()
