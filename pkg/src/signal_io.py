"""
Signal Input/Output Module
Reads and writes plain-text signals and integer tables
"""

import logging
import math
from pathlib import Path

from .errors import RamanujanError, SignalFormatError
from .ramanujan_operators import BoundaryPolicy, Signal

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12


def _parse_line(path, line_number, line):
    values = []
    column = 1
    for token in line.split(","):
        stripped = token.strip()
        token_column = column + (len(token) - len(token.lstrip()))
        if not stripped:
            raise SignalFormatError(path, "empty value", line_number, token_column)
        try:
            value = float(stripped)
        except ValueError:
            raise SignalFormatError(path, f"not a number: {stripped!r}", line_number, token_column) from None
        if not math.isfinite(value):
            raise SignalFormatError(path, f"non-finite value {stripped!r}", line_number, token_column)
        values.append(value)
        column += len(token) + 1
    return values


def _decode(path, raw):
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line_start = raw.rfind(b"\n", 0, e.start) + 1
        line = raw.count(b"\n", 0, e.start) + 1
        column = e.start - line_start + 1
        raise SignalFormatError(path, "invalid UTF-8", line, column) from None


def read_signal(path, boundary=BoundaryPolicy.REPLICATE):
    """
    Read a signal file

    One sample per line or comma-separated values; blank lines and lines
    starting with '#' are skipped. CRLF line endings are accepted.

    Args:
        path (str or Path): File to read
        boundary (BoundaryPolicy or str): Policy attached to the returned signal

    Returns:
        Signal: Samples in file order

    Raises:
        SignalFormatError: unparsable token or invalid UTF-8 (with line and column), or no samples
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise RamanujanError(f"Cannot read signal file {path}: {e.strerror or e}") from e
    text = _decode(path, raw)

    samples = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        samples.extend(_parse_line(path, line_number, raw))

    if not samples:
        raise SignalFormatError(path, "file contains no samples")

    logger.info(f"Read {len(samples)} samples from {path}")
    return Signal(samples=samples, boundary=boundary)


def format_real(value):
    """Real value printed with 12 significant digits"""
    text = f"{float(value):.{SIGNIFICANT_DIGITS}g}"
    return "0" if text == "-0" else text


def _write_lines(lines, path):
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for line in lines:
                fh.write(f"{line}\n")
    except OSError as e:
        raise RamanujanError(f"Cannot write {path}: {e.strerror or e}") from e


def write_signal(signal, path):
    """Write one sample per line with 12 significant digits"""
    samples = signal.samples if isinstance(signal, Signal) else signal
    _write_lines((format_real(v) for v in samples), path)
    logger.info(f"Wrote {len(samples)} samples to {path}")


def write_table(integers, path):
    """Write exact integers, one per line"""
    values = [int(v) for v in integers]
    _write_lines((str(v) for v in values), path)
    logger.info(f"Wrote {len(values)} integers to {path}")
