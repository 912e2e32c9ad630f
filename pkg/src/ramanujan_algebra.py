"""
Ramanujan Algebra Module
Multiplicativity of Ramanujan sums and its generalization to shifted sequences
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidModulusError
from .ramanujan_sums import as_int, require_modulus, period_table, sum_fast

logger = logging.getLogger(__name__)


class ShiftConvention(Enum):
    """
    How the shift of a product of shifted sequences is predicted

    CRT solves beta = alpha1 (mod p), beta = alpha2 (mod q) and always matches
    the brute-force product. PRINTED is alpha2*p - alpha1*q, NEGATED its
    negation; both agree with the brute force only for some (p, q).
    """

    CRT = "crt"
    PRINTED = "printed"
    NEGATED = "negated"


@dataclass(frozen=True)
class ShiftedSequence:
    """c_q(n - alpha), alpha stored reduced mod q"""

    q: int
    alpha: int = 0

    def __post_init__(self):
        q = require_modulus(self.q)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "alpha", as_int(self.alpha, "alpha") % q)


@dataclass(frozen=True)
class ProductResult:
    modulus: int
    shift: int
    values: tuple


@dataclass(frozen=True)
class ProductCheck:
    """Brute-force verdict for one (p, q, alpha1, alpha2)"""

    equal: bool
    predicted: ProductResult
    brute_force: tuple
    first_mismatch: tuple = None  # (n, brute-force value, predicted value)


@dataclass
class SweepSummary:
    """Outcome of an exhaustive sweep over coprime pairs and all shift pairs"""

    limit: int
    cases: int = 0
    non_shift_products: list = field(default_factory=list)
    agreements: dict = field(default_factory=lambda: {c: 0 for c in ShiftConvention})
    witnesses: dict = field(default_factory=lambda: {c: [] for c in ShiftConvention})

    def agreement_rate(self, convention):
        return self.agreements[convention] / self.cases if self.cases else 1.0

    @property
    def supported_conventions(self):
        return [c for c in ShiftConvention if self.cases and self.agreements[c] == self.cases]


def eval_shifted(s, n):
    """Value of the shifted sequence at n: sum_fast(s.q, n - s.alpha)"""
    return sum_fast(s.q, as_int(n, "n") - s.alpha)


def _validate_pair(p, q):
    p = require_modulus(p, "p")
    q = require_modulus(q, "q")
    if p <= q:
        raise InvalidModulusError(f"Shifted products need p > q, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise InvalidModulusError(f"p={p} and q={q} are not coprime")
    return p, q


def _crt_shift(p, q, alpha1, alpha2):
    # beta = alpha1 + p * t with p * t = alpha2 - alpha1 (mod q)
    t = ((alpha2 - alpha1) * pow(p, -1, q)) % q if q > 1 else 0
    return (alpha1 + p * t) % (p * q)


def product_shift(p, q, alpha1, alpha2, convention=ShiftConvention.CRT):
    """
    Shift of c_pq predicted for c_p(n - alpha1) * c_q(n - alpha2)

    Shifts are reduced mod p and mod q first; equal reduced shifts give alpha1
    under every convention.
    """
    p, q = _validate_pair(p, q)
    convention = ShiftConvention(convention)
    alpha1 = as_int(alpha1, "alpha1") % p
    alpha2 = as_int(alpha2, "alpha2") % q
    pq = p * q

    if alpha1 == alpha2:
        return alpha1
    if convention is ShiftConvention.CRT:
        return _crt_shift(p, q, alpha1, alpha2)
    printed = (alpha2 * p - alpha1 * q) % pq
    if convention is ShiftConvention.PRINTED:
        return printed
    return (-printed) % pq


def predict_product(p, q, alpha1, alpha2, convention=ShiftConvention.CRT):
    """
    Predict c_p(n - alpha1) * c_q(n - alpha2) as a shifted c_pq

    Args:
        p (int): Larger modulus, coprime to q
        q (int): Smaller modulus, q >= 1
        alpha1 (int): Shift of the c_p factor
        alpha2 (int): Shift of the c_q factor
        convention (ShiftConvention): Shift formula to use

    Returns:
        ProductResult: modulus pq, the predicted shift and one period of c_pq(n - shift)
    """
    shift = product_shift(p, q, alpha1, alpha2, convention)
    pq = p * q
    base = period_table(pq).values
    values = tuple(base[(n - shift) % pq] for n in range(pq))
    return ProductResult(modulus=pq, shift=shift, values=values)


def _shifted_period(period, alpha, length):
    n = np.arange(length, dtype=np.int64)
    return period[(n - alpha) % len(period)]


def check_product(p, q, alpha1, alpha2, convention=ShiftConvention.CRT):
    """
    Compare the brute-force product of two shifted sequences with the prediction

    Returns:
        ProductCheck: equality verdict and, on mismatch, the first differing n
            with the brute-force and predicted values
    """
    predicted = predict_product(p, q, alpha1, alpha2, convention)
    pq = predicted.modulus
    brute = (_shifted_period(period_table(p).as_array(), alpha1 % p, pq)
             * _shifted_period(period_table(q).as_array(), alpha2 % q, pq))
    expected = np.array(predicted.values, dtype=np.int64)

    mismatches = np.flatnonzero(brute != expected)
    brute_values = tuple(int(v) for v in brute)
    if mismatches.size == 0:
        return ProductCheck(equal=True, predicted=predicted, brute_force=brute_values)

    n = int(mismatches[0])
    logger.info(f"Product mismatch p={p} q={q} a1={alpha1} a2={alpha2} at n={n}")
    return ProductCheck(equal=False, predicted=predicted, brute_force=brute_values,
                        first_mismatch=(n, brute_values[n], predicted.values[n]))


def find_cyclic_shift(values, modulus):
    """
    Locate s with values[n] = c_modulus(n - s) for every n, or None

    c_m reaches phi(m) only at multiples of m, so the candidate is the position
    of the first maximum.
    """
    values = np.asarray(values, dtype=np.int64)
    base = period_table(modulus).as_array()
    s = int(np.argmax(values))
    if np.array_equal(values, _shifted_period(base, s, modulus)):
        return s
    return None


def coprime_pairs(limit):
    """All (p, q) with p > q >= 1, gcd(p, q) = 1 and p*q <= limit"""
    for q in range(1, math.isqrt(limit) + 1):
        for p in range(q + 1, limit // q + 1):
            if math.gcd(p, q) == 1:
                yield p, q


def check_multiplicative(limit):
    """
    Exhaustively test c_p(n) c_q(n) = c_pq(n) for coprime p > q, pq <= limit

    Returns:
        list: (p, q, n) witnesses of failure, empty when the identity holds
    """
    failures = []
    for p, q in coprime_pairs(limit):
        pq = p * q
        n = np.arange(pq)
        product = period_table(p).as_array()[n % p] * period_table(q).as_array()[n % q]
        bad = np.flatnonzero(product != period_table(pq).as_array())
        if bad.size:
            failures.append((p, q, int(bad[0])))
    logger.info(f"Multiplicativity checked up to pq={limit}: {len(failures)} failures")
    return failures


def _predicted_shifts(p, q, convention):
    """product_shift over the whole (alpha1, alpha2) grid at once"""
    pq = p * q
    a1 = np.arange(p, dtype=np.int64)[:, None]
    a2 = np.arange(q, dtype=np.int64)[None, :]
    if convention is ShiftConvention.CRT:
        inverse = pow(p, -1, q) if q > 1 else 0
        shifts = (a1 + p * (((a2 - a1) * inverse) % q)) % pq
    else:
        shifts = (a2 * p - a1 * q) % pq
        if convention is ShiftConvention.NEGATED:
            shifts = (-shifts) % pq
    return np.where(a1 == a2, a1, shifts)


def sweep_products(limit, max_witnesses=10):
    """
    Exhaustive shifted-product sweep for coprime p > q with pq <= limit

    For every (alpha1, alpha2) in [0, p) x [0, q) the brute-force product is
    matched against every cyclic shift of c_pq, then each convention's
    prediction is compared with the shift found.

    Returns:
        SweepSummary: case count, agreement per convention and witnesses
    """
    summary = SweepSummary(limit=limit)
    for p, q in coprime_pairs(limit):
        pq = p * q
        n = np.arange(pq, dtype=np.int64)
        cp = period_table(p).as_array()
        cq = period_table(q).as_array()
        base = period_table(pq).as_array()

        a1 = np.arange(p)[:, None, None]
        a2 = np.arange(q)[None, :, None]
        products = cp[(n - a1) % p] * cq[(n - a2) % q]          # shape (p, q, pq)
        observed = np.argmax(products, axis=2)
        rebuilt = base[(n - observed[:, :, None]) % pq]
        is_shift = np.all(products == rebuilt, axis=2)

        summary.cases += p * q
        for alpha1, alpha2 in np.argwhere(~is_shift):
            summary.non_shift_products.append((p, q, int(alpha1), int(alpha2)))

        for convention in ShiftConvention:
            predicted = _predicted_shifts(p, q, convention)
            agree = is_shift & (predicted == observed)
            summary.agreements[convention] += int(np.count_nonzero(agree))
            room = max_witnesses - len(summary.witnesses[convention])
            for alpha1, alpha2 in np.argwhere(is_shift & ~agree)[:max(room, 0)]:
                summary.witnesses[convention].append(
                    (p, q, int(alpha1), int(alpha2), int(observed[alpha1, alpha2]), int(predicted[alpha1, alpha2]))
                )

    logger.info(
        f"Shifted-product sweep up to pq={limit}: {summary.cases} cases, "
        + ", ".join(f"{c.value} {summary.agreement_rate(c):.1%}" for c in ShiftConvention)
    )
    return summary
