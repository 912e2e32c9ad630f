"""
Ramanujan Sums Module
Exact computation of c_q(n): brute-force oracle, prime closed form,
prime-power lifting and the full multiplicative composition over a factorization
"""

import logging
import math
import operator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    INT64_MAX,
    IntegerOverflowError,
    InvalidModulusError,
    ResidueError,
    check_int64,
)

logger = logging.getLogger(__name__)

ORACLE_TOLERANCE = 1e-6

# Rows of the (n, k) phase matrix are evaluated in blocks of about this many cells
_ORACLE_BLOCK_CELLS = 1 << 22


def as_int(value, name):
    """Integer value of an int-like argument, else InvalidModulusError"""
    try:
        return operator.index(value)
    except TypeError:
        raise InvalidModulusError(f"{name} must be an integer, got {value!r}") from None


def require_modulus(q, name="q", minimum=1):
    """Validated integer modulus in [minimum, 2^63 - 1]"""
    q = as_int(q, name)
    if q < minimum:
        raise InvalidModulusError(f"{name} must be >= {minimum}, got {q}")
    check_int64(q, name)
    return q


@dataclass(frozen=True)
class Factorization:
    """N as an ordered tuple of (prime, exponent) pairs"""

    n: int
    factors: tuple

    def __post_init__(self):
        product = 1
        previous = 1
        for p, r in self.factors:
            if p <= previous or not is_prime(p) or r < 1:
                raise InvalidModulusError(f"Invalid factor ({p}, {r}) in factorization of {self.n}")
            previous = p
            product *= p**r
        if product != self.n:
            raise InvalidModulusError(f"Factors {self.factors} multiply to {product}, not {self.n}")

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{r}" if r > 1 else str(p) for p, r in self.factors)


@dataclass(frozen=True)
class RamanujanPeriod:
    """One period of c_q(n), values[n] = c_q(n) for n = 0..q-1"""

    q: int
    values: tuple

    def __len__(self):
        return self.q

    def __getitem__(self, n):
        return self.values[n % self.q]

    def as_array(self):
        return np.array(self.values, dtype=np.int64)


def is_prime(n):
    """Deterministic primality by trial division up to sqrt(n)"""
    n = as_int(n, "n")
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorize(n):
    """
    Factor n by trial division up to sqrt(n)

    Args:
        n (int): Value to factor, 1 <= n <= 2^63 - 1

    Returns:
        Factorization: Primes strictly increasing; empty for n = 1
    """
    n = as_int(n, "n")
    if n < 1:
        raise InvalidModulusError(f"Cannot factorize {n}; n must be positive")
    if n > INT64_MAX:
        check_int64(n, "n")

    factors = []
    remaining = n
    d = 2
    while d * d <= remaining:
        if remaining % d == 0:
            r = 0
            while remaining % d == 0:
                remaining //= d
                r += 1
            factors.append((d, r))
        d = 3 if d == 2 else d + 2
    if remaining > 1:
        factors.append((remaining, 1))

    return Factorization(n=n, factors=tuple(factors))


def totient(factorization):
    """Euler's phi from a factorization: product of p^(r-1) * (p-1)"""
    result = 1
    for p, r in factorization.factors:
        result *= p ** (r - 1) * (p - 1)
    return result


def coprime_residues(q):
    """k in 1..q with gcd(k, q) = 1"""
    k = np.arange(1, q + 1, dtype=np.int64)
    return k[np.gcd(k, q) == 1]


def oracle_values(q, ns, tolerance=ORACLE_TOLERANCE):
    """Brute-force definition for every n in ns, returning exact integers"""
    ks = coprime_residues(q)
    ns = np.mod(np.asarray(ns, dtype=np.int64), q)
    out = np.empty(len(ns), dtype=np.int64)

    block = max(1, _ORACLE_BLOCK_CELLS // len(ks))
    for start in range(0, len(ns), block):
        chunk = ns[start:start + block]
        # k*n is reduced mod q before scaling so the phase stays accurate for large q
        phases = np.mod(np.outer(chunk, ks), q)
        totals = np.exp(2j * np.pi * phases / q).sum(axis=1)
        rounded = np.rint(totals.real)

        imag_residue = float(np.max(np.abs(totals.imag)))
        round_residue = float(np.max(np.abs(totals.real - rounded)))
        if imag_residue >= tolerance or round_residue >= tolerance:
            raise ResidueError(
                f"Oracle residue for q={q} exceeds {tolerance}: "
                f"imaginary {imag_residue:.3e}, rounding {round_residue:.3e}"
            )
        out[start:start + block] = rounded.astype(np.int64)
    return out


def sum_oracle(q, n, tolerance=ORACLE_TOLERANCE):
    """
    Evaluate c_q(n) directly from its definition in complex floating point

    Args:
        q (int): Modulus, q >= 1
        n (int): Any integer; reduced mod q

    Returns:
        int: The rounded sum

    Raises:
        ResidueError: if the imaginary part or the rounding distance reaches tolerance
    """
    q = require_modulus(q)
    n = as_int(n, "n")
    return int(oracle_values(q, [n % q], tolerance)[0])


def oracle_period(q, tolerance=ORACLE_TOLERANCE):
    """Brute-force c_q(n) for n = 0..q-1 as a RamanujanPeriod"""
    q = require_modulus(q)
    values = oracle_values(q, np.arange(q, dtype=np.int64), tolerance)
    return RamanujanPeriod(q=q, values=tuple(int(v) for v in values))


def _require_prime(p):
    p = require_modulus(p, "p", minimum=2)
    if not is_prime(p):
        raise InvalidModulusError(f"p = {p} is not prime")
    return p


def _prime_branch(p, n):
    return p - 1 if n % p == 0 else -1


def _lift_factor(p, l):
    """p^(l-1), refusing anything past the 64-bit range"""
    if l > 64:
        raise IntegerOverflowError(f"{p}^{l - 1} exceeds the signed 64-bit range")
    return check_int64(p ** (l - 1), f"{p}^{l - 1}")


def _prime_power_branch(p, l, n):
    m = _lift_factor(p, l)
    if n % m:
        return 0
    return check_int64(m * _prime_branch(p, n // m), f"c_{p}^{l}({n})")


def sum_prime(p, n):
    """c_p(n) for prime p: p - 1 when p divides n, else -1"""
    p = _require_prime(p)
    return _prime_branch(p, as_int(n, "n"))


def sum_prime_power(p, l, n):
    """
    c_{p^l}(n) by lifting the prime case

    Returns p^(l-1) * c_p(n / p^(l-1)) when p^(l-1) divides n, and 0 otherwise.

    Raises:
        InvalidModulusError: p not prime or l < 1
        IntegerOverflowError: p^(l-1) beyond the 64-bit range
    """
    p = _require_prime(p)
    l = require_modulus(l, "l")
    return _prime_power_branch(p, l, as_int(n, "n"))


def sum_from_factorization(factorization, n):
    """Product of prime-power sums over an already computed factorization"""
    n = as_int(n, "n") % factorization.n
    result = 1
    for p, r in factorization.factors:
        term = _prime_power_branch(p, r, n)
        if term == 0:
            return 0
        result = check_int64(result * term, f"c_{factorization.n}({n})")
    return result


def sum_fast(q, n):
    """
    c_q(n) via factorization, exact integer arithmetic throughout

    Args:
        q (int): Modulus, q >= 1
        n (int): Any integer

    Returns:
        int: c_q(n); 1 for q = 1
    """
    q = require_modulus(q)
    return sum_from_factorization(factorize(q), n)


def _prime_power_column(p, r, n):
    m = p ** (r - 1)
    inner = np.where((n // m) % p == 0, m * (p - 1), -m)
    return np.where(n % m == 0, inner, 0)


def period_table(q):
    """
    One period of c_q(n) computed by the factorized scheme

    Args:
        q (int): Modulus, q >= 1

    Returns:
        RamanujanPeriod: values[n] = sum_fast(q, n) for n = 0..q-1
    """
    return _period_table(require_modulus(q))


@lru_cache(maxsize=1024)
def _period_table(q):
    factorization = factorize(q)
    n = np.arange(q, dtype=np.int64)
    values = np.ones(q, dtype=np.int64)
    for p, r in factorization.factors:
        values *= _prime_power_column(p, r, n)

    logger.debug(f"Built period table for q={q} ({factorization})")
    return RamanujanPeriod(q=q, values=tuple(int(v) for v in values))


def interpolated_period(p, l):
    """
    One period of c_{p^l} built as the prime period zero-stuffed by p^(l-1)

    Each sample of c_p is scaled by p^(l-1) and followed by p^(l-1) - 1 zeros.
    """
    p = _require_prime(p)
    l = require_modulus(l, "l")
    m = _lift_factor(p, l)
    q = check_int64(m * p, f"{p}^{l}")

    base = np.array([_prime_branch(p, j) for j in range(p)], dtype=np.int64)
    values = np.zeros(q, dtype=np.int64)
    values[::m] = base * m
    return RamanujanPeriod(q=q, values=tuple(int(v) for v in values))
