# Package initialization for the Ramanujan operators library
"""
Ramanujan Operators

Exact Ramanujan sums, first- and second-derivative Ramanujan operators,
the multiplicative identities of shifted Ramanujan sequences, and a
benchmark of the factorized computation against the definition.

Author: Signal Analysis Team
Version: 1.0.0
"""

__version__ = "1.0.0"
__author__ = "Signal Analysis Team"
__description__ = "Ramanujan sums and Ramanujan derivative operators"

# Import main entry points for easy access
from .ramanujan_sums import factorize, period_table, sum_fast, sum_oracle
from .ramanujan_operators import apply, kernel_first, kernel_second, Signal
from .ramanujan_algebra import check_product, predict_product
from .verification import VerificationPipeline

__all__ = [
    'factorize',
    'period_table',
    'sum_fast',
    'sum_oracle',
    'apply',
    'kernel_first',
    'kernel_second',
    'Signal',
    'check_product',
    'predict_product',
    'VerificationPipeline',
]
