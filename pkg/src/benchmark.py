"""
Benchmark Module
Times the brute-force definition against the factorized computation
"""

import logging
import time
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .errors import InvalidModulusError
from .ramanujan_sums import (
    oracle_values,
    require_modulus,
    factorize,
    sum_from_factorization,
    totient,
)

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["q", "n_evaluated", "naive_ns", "fast_ns", "speedup", "exact"]


@dataclass(frozen=True)
class BenchRecord:
    q: int
    n_evaluated: int
    naive_ns: int
    fast_ns: int
    exact: bool
    prime_factors: int = 0
    naive_terms_per_n: int = 0
    diagnostic: str = ""

    @property
    def speedup(self):
        return self.naive_ns / self.fast_ns if self.fast_ns else float("inf")

    @property
    def valid(self):
        return self.exact


def sample_points(q, samples_per_q):
    """Full period when it fits, otherwise evenly spaced points of one period"""
    if q <= samples_per_q:
        return list(range(q))
    return [i * q // samples_per_q for i in range(samples_per_q)]


def _median_ns(fn, repeats):
    fn()  # warm-up, not timed
    timings = []
    for _ in range(repeats):
        start = time.perf_counter_ns()
        result = fn()
        timings.append(time.perf_counter_ns() - start)
    return int(np.median(timings)), result


def bench_one(q, samples_per_q, repeats=3):
    """
    Time both methods for one modulus over the same set of n

    Returns:
        BenchRecord: timings plus the exactness flag; a disagreement is
            recorded with a diagnostic instead of timings being trusted
    """
    q = require_modulus(q, minimum=2)
    ns = sample_points(q, samples_per_q)
    factorization = factorize(q)

    def naive():
        return [int(v) for v in oracle_values(q, ns)]

    def fast():
        f = factorize(q)
        return [sum_from_factorization(f, n) for n in ns]

    naive_ns, naive_values = _median_ns(naive, repeats)
    fast_ns, fast_values = _median_ns(fast, repeats)

    diagnostic = ""
    exact = naive_values == fast_values
    if not exact:
        n, a, b = next((n, a, b) for n, a, b in zip(ns, naive_values, fast_values) if a != b)
        diagnostic = f"c_{q}({n}): naive {a} != fast {b}"
        logger.error(f"Benchmark disagreement for q={q}: {diagnostic}")

    record = BenchRecord(
        q=q,
        n_evaluated=len(ns),
        naive_ns=naive_ns,
        fast_ns=fast_ns,
        exact=exact,
        prime_factors=len(factorization.factors),
        naive_terms_per_n=totient(factorization),
        diagnostic=diagnostic,
    )
    logger.info(f"Benchmarked q={q}: speedup {record.speedup:.1f}x over {len(ns)} points")
    return record


def bench_compare(q_list, samples_per_q, repeats=3):
    """
    Benchmark the naive and factorized methods for every q

    Args:
        q_list (list): Moduli, all >= 2
        samples_per_q (int): Points evaluated per modulus, >= 1
        repeats (int): Timed repetitions; the median is reported

    Returns:
        list: One BenchRecord per q, in input order
    """
    if samples_per_q < 1:
        raise InvalidModulusError(f"samples_per_q must be >= 1, got {samples_per_q}")
    q_list = [require_modulus(q, minimum=2) for q in q_list]
    return [bench_one(q, samples_per_q, repeats) for q in q_list]


def records_to_frame(records):
    """Benchmark records as a DataFrame with the CSV columns"""
    rows = [
        {
            "q": r.q,
            "n_evaluated": r.n_evaluated,
            "naive_ns": r.naive_ns,
            "fast_ns": r.fast_ns,
            "speedup": round(r.speedup, 3),
            "exact": r.exact,
        }
        for r in records
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_csv(records, path):
    records_to_frame(records).to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Saved {len(records)} benchmark records to {path}")
