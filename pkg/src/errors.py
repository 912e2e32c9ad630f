"""
Exception types raised by the Ramanujan operators library
"""

INT64_MAX = 2**63 - 1


class RamanujanError(ValueError):
    """Base class for user-facing errors (bad arguments, bad input files)"""


class InvalidModulusError(RamanujanError):
    """A modulus, prime or pair of moduli violates an operation's precondition"""


class IntegerOverflowError(RamanujanError, OverflowError):
    """An exact intermediate left the signed 64-bit range"""


class SignalFormatError(RamanujanError):
    """A signal file could not be parsed"""

    def __init__(self, path, message, line=None, column=None):
        self.path = str(path)
        self.line = line
        self.column = column
        location = self.path
        if line is not None:
            location += f":{line}"
            if column is not None:
                location += f":{column}"
        super().__init__(f"{location}: {message}")


class ResidueError(AssertionError):
    """Floating-point evaluation drifted past tolerance; this is a numeric bug, not a user error"""


def check_int64(value, what="value"):
    """
    Return value unchanged if it fits in a signed 64-bit integer

    Raises:
        IntegerOverflowError: when |value| exceeds the 64-bit range
    """
    if value > INT64_MAX or value < -INT64_MAX - 1:
        raise IntegerOverflowError(f"{what} = {value} exceeds the signed 64-bit range")
    return value
