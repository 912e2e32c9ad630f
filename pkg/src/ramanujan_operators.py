"""
Ramanujan Operators Module
First- and second-derivative kernels built from Ramanujan sums, their
application to signals, and verification of the derivative properties
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd

from .errors import InvalidModulusError, RamanujanError, ResidueError
from .ramanujan_sums import coprime_residues, require_modulus, period_table

logger = logging.getLogger(__name__)

CONVOLUTION_TOLERANCE = 1e-9
CLOSED_FORM_TOLERANCE = 1e-6


class KernelVariant(Enum):
    FIRST = "first"
    SECOND = "second"
    SHIFTED = "shifted"


class BoundaryPolicy(Enum):
    ZERO_PAD = "zero"
    REPLICATE = "replicate"
    PERIODIC_WRAP = "wrap"

    @property
    def pad_mode(self):
        return {"zero": "constant", "replicate": "edge", "wrap": "wrap"}[self.value]

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(p.value for p in cls)
            raise RamanujanError(f"Unknown boundary policy {value!r}; expected one of {choices}") from None


@dataclass(frozen=True)
class RamanujanKernel:
    """
    One period of c_q as convolution taps

    Output index n of apply() reads x(n + anchor - k) against taps[k], so a
    non-zero anchor centres the kernel on the sample it responds to.
    """

    q: int
    taps: tuple
    variant: KernelVariant
    anchor: int = 0

    def __post_init__(self):
        if self.q < 2:
            raise InvalidModulusError(f"Operator modulus must be >= 2, got {self.q}")
        if len(self.taps) != self.q:
            raise InvalidModulusError(f"Kernel for q={self.q} has {len(self.taps)} taps")
        if sum(self.taps) != 0:
            raise InvalidModulusError(f"Kernel taps for q={self.q} do not sum to zero")
        if self.variant is KernelVariant.SECOND:
            if self.q % 2 == 0 or self.anchor != (self.q - 1) // 2:
                raise InvalidModulusError(f"Second-derivative kernel needs odd q and centred anchor, got q={self.q}")
            if self.taps != self.taps[::-1]:
                raise InvalidModulusError(f"Second-derivative kernel for q={self.q} is not symmetric")

    def __len__(self):
        return self.q

    def as_array(self):
        return np.array(self.taps, dtype=np.float64)


@dataclass(frozen=True, eq=False)
class Signal:
    """Finite real-valued samples plus the policy used to read past either end"""

    samples: np.ndarray
    boundary: BoundaryPolicy = BoundaryPolicy.REPLICATE

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size < 1:
            raise RamanujanError("Signal must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(samples)):
            raise RamanujanError("Signal samples must be finite")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "boundary", BoundaryPolicy.parse(self.boundary))

    def __len__(self):
        return len(self.samples)

    def tolist(self):
        return self.samples.tolist()


@dataclass
class Check:
    name: str
    expected: str
    observed: object
    passed: bool


@dataclass
class VerificationReport:
    """Pass/fail results of one derivative-property run"""

    q: int
    variant: KernelVariant
    checks: list = field(default_factory=list)

    def add(self, name, expected, observed, passed):
        self.checks.append(Check(name, expected, observed, bool(passed)))

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def check(self, name):
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def to_frame(self):
        rows = [
            {"q": self.q, "variant": self.variant.value, "check": c.name,
             "expected": c.expected, "observed": c.observed, "passed": c.passed}
            for c in self.checks
        ]
        return pd.DataFrame(rows, columns=["q", "variant", "check", "expected", "observed", "passed"])


def kernel_first(q):
    """
    First-derivative kernel: taps[n] = c_q(n) for n = 0..q-1

    Args:
        q (int): Modulus, q >= 2

    Returns:
        RamanujanKernel: Causal kernel (anchor 0)
    """
    q = require_modulus(q, minimum=2)
    return RamanujanKernel(q=q, taps=period_table(q).values, variant=KernelVariant.FIRST, anchor=0)


def kernel_second(q):
    """
    Second-derivative kernel: one period of c_q shifted by (q-1)/2, centred

    Args:
        q (int): Odd modulus, q >= 3
    """
    q = require_modulus(q, minimum=2)
    if q % 2 == 0:
        raise InvalidModulusError(f"Second-derivative kernel needs odd q; c_{q} is a first derivative for every shift")
    half = (q - 1) // 2
    values = period_table(q).values
    taps = tuple(values[(n - half) % q] for n in range(q))
    return RamanujanKernel(q=q, taps=taps, variant=KernelVariant.SECOND, anchor=half)


def kernel_shifted(q, shift):
    """Causal kernel with taps[n] = c_q(n - shift)"""
    q = require_modulus(q, minimum=2)
    values = period_table(q).values
    taps = tuple(values[(n - shift) % q] for n in range(q))
    return RamanujanKernel(q=q, taps=taps, variant=KernelVariant.SHIFTED, anchor=0)


def apply(kernel, x, boundary=None):
    """
    Apply a Ramanujan operator to a signal

    output[n] = sum_k taps[k] * x_ext(n + anchor - k), where x_ext extends x
    according to the boundary policy.

    Args:
        kernel (RamanujanKernel): Operator kernel
        x (Signal): Input signal
        boundary (BoundaryPolicy or str, optional): Overrides the signal's own policy

    Returns:
        Signal: Output of the same length and policy as x
    """
    policy = BoundaryPolicy.parse(boundary) if boundary is not None else x.boundary
    left = kernel.q - 1 - kernel.anchor
    right = kernel.anchor
    padded = np.pad(x.samples, (left, right), mode=policy.pad_mode)
    y = np.convolve(padded, kernel.as_array(), mode="valid")
    return Signal(samples=y, boundary=x.boundary)


def interior_range(kernel, length):
    """First and last output index whose computation reads no extended sample"""
    return kernel.q - 1 - kernel.anchor, length - 1 - kernel.anchor


def first_moment(kernel):
    """Exact ramp response of a kernel: -sum(l * taps[l])"""
    return -sum(l * t for l, t in enumerate(kernel.taps))


def ramp_constant(q, tolerance=CLOSED_FORM_TOLERANCE):
    """
    Closed form of the first-derivative ramp response

    Evaluates sum over k coprime to q of q / (1 - exp(j*2*pi*k/q)).

    Raises:
        ResidueError: imaginary residue at or above tolerance
    """
    q = require_modulus(q, minimum=2)
    ks = coprime_residues(q)
    total = np.sum(q / (1.0 - np.exp(2j * np.pi * ks / q)))
    if abs(total.imag) >= tolerance:
        raise ResidueError(f"Ramp closed form for q={q} has imaginary residue {abs(total.imag):.3e}")
    return float(total.real)


def constant_signal(length, level=1.0):
    return Signal(np.full(length, float(level)))


def step_signal(length, onset):
    """Unit step u(n - onset)"""
    return Signal((np.arange(length) >= onset).astype(np.float64))


def ramp_signal(length):
    """Ramp r(n) = n"""
    return Signal(np.arange(length, dtype=np.float64))


def quadratic_signal(length):
    return Signal(np.arange(length, dtype=np.float64) ** 2)


def _summarize(values, tolerance):
    """Single value when the interior is flat, else the (min, max) spread"""
    low, high = float(np.min(values)), float(np.max(values))
    return low if high - low <= tolerance else (low, high)


def _check_constant(report, kernel, length, tolerance):
    lo, hi = interior_range(kernel, length)
    out = apply(kernel, constant_signal(length, 1.0)).samples
    worst = float(np.max(np.abs(out[lo:hi + 1])))
    report.add("constant -> zero", "0 on interior", worst, worst <= tolerance)


def _check_step(report, kernel, length, tolerance):
    onset = length // 2
    out = apply(kernel, step_signal(length, onset)).samples
    start = onset - kernel.anchor
    stop = start + kernel.q - 1

    peak = float(np.max(np.abs(out[start:stop + 1])))
    report.add("step onset nonzero", f"|y| > {tolerance} in [{start}, {stop}]", peak, peak > tolerance)

    lo, hi = interior_range(kernel, length)
    idx = np.arange(lo, hi + 1)
    away = idx[(idx < start) | (idx > stop)]
    worst = float(np.max(np.abs(out[away]))) if away.size else 0.0
    report.add("step flat away from onset", "0 outside onset window", worst, worst <= tolerance)


def _require_length(q, length):
    if length < 3 * q:
        raise RamanujanError(f"Verification signal length must be >= 3q = {3 * q}, got {length}")


def verify_first_derivative(q, length, tolerance=CONVOLUTION_TOLERANCE,
                            closed_form_tolerance=CLOSED_FORM_TOLERANCE):
    """
    Check that the first-derivative operator behaves as a first derivative

    Constant input gives zero, a unit step gives a nonzero onset, a ramp gives
    a nonzero constant equal to the kernel's first moment and its closed form.

    Args:
        q (int): Modulus, q >= 2
        length (int): Test signal length, >= 3q

    Returns:
        VerificationReport: One entry per property
    """
    kernel = kernel_first(q)
    _require_length(kernel.q, length)
    report = VerificationReport(q=kernel.q, variant=kernel.variant)

    _check_constant(report, kernel, length, tolerance)
    _check_step(report, kernel, length, tolerance)

    lo, hi = interior_range(kernel, length)
    moment = first_moment(kernel)
    interior = apply(kernel, ramp_signal(length)).samples[lo:hi + 1]
    deviation = float(np.max(np.abs(interior - moment)))
    report.add("ramp -> constant", f"{moment} on interior", _summarize(interior, tolerance),
               deviation <= tolerance and moment != 0)

    try:
        closed = ramp_constant(kernel.q, closed_form_tolerance)
        report.add("ramp closed form", f"{moment} within {closed_form_tolerance}", closed,
                   abs(closed - moment) < closed_form_tolerance)
    except ResidueError as e:
        logger.error(f"Closed form failed for q={kernel.q}: {e}")
        report.add("ramp closed form", f"{moment} within {closed_form_tolerance}", str(e), False)

    logger.info(f"First-derivative verification q={kernel.q}: {'pass' if report.passed else 'FAIL'}")
    return report


def verify_second_derivative(q, length, tolerance=CONVOLUTION_TOLERANCE):
    """
    Check that the shifted kernel behaves as a second derivative

    Constant input gives zero, a unit step gives a nonzero onset, a ramp gives
    zero and n^2 gives one constant across the interior. The kernel itself is
    checked for symmetry and zero sum.
    """
    kernel = kernel_second(q)
    _require_length(kernel.q, length)
    report = VerificationReport(q=kernel.q, variant=kernel.variant)
    taps = kernel.taps

    report.add("kernel symmetric", "taps[i] = taps[q-1-i]", taps == taps[::-1], taps == taps[::-1])
    report.add("kernel zero sum", "0", sum(taps), sum(taps) == 0)

    _check_constant(report, kernel, length, tolerance)
    _check_step(report, kernel, length, tolerance)

    lo, hi = interior_range(kernel, length)
    ramp = apply(kernel, ramp_signal(length)).samples[lo:hi + 1]
    worst = float(np.max(np.abs(ramp)))
    report.add("ramp -> zero", "0 on interior", worst, worst <= tolerance)

    # the constant's value is recorded, only its flatness is asserted
    quadratic = apply(kernel, quadratic_signal(length)).samples[lo:hi + 1]
    spread = float(np.max(quadratic) - np.min(quadratic))
    report.add("quadratic -> constant", "one value on interior", _summarize(quadratic, tolerance),
               spread <= tolerance)

    logger.info(f"Second-derivative verification q={kernel.q}: {'pass' if report.passed else 'FAIL'}")
    return report


def shift_survey(q):
    """
    Ramp response of c_q(n - shift) for every shift

    Returns:
        pandas.DataFrame: columns shift, ramp_response, acts_as
    """
    q = require_modulus(q, minimum=2)
    rows = []
    for shift in range(q):
        moment = first_moment(kernel_shifted(q, shift))
        rows.append({
            "shift": shift,
            "ramp_response": moment,
            "acts_as": "second derivative" if moment == 0 else "first derivative",
        })
    return pd.DataFrame(rows, columns=["shift", "ramp_response", "acts_as"])
