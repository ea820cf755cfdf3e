"""Bernoulli-number coefficients for the Euler-Maclaurin tail.

Exports BERN_OVER_FACT[k] = B_{2(k+1)} / (2(k+1))! as float64, computed
exactly with Fractions at import time. Entry 0 is B_2/2! = 1/12.
"""

from fractions import Fraction
from math import comb, factorial

import numpy as np

# One entry past the largest usable correction count: the error bound
# needs the first omitted term.
MAX_CORRECTION_TERMS = 24


def _bernoulli_even(count: int) -> list[Fraction]:
    """First `count` even-index Bernoulli numbers B_2, B_4, ..., exact."""
    m_top = 2 * count
    b: list[Fraction] = [Fraction(1)]
    for m in range(1, m_top + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return [b[2 * k] for k in range(1, count + 1)]


BERN_OVER_FACT = np.array(
    [
        float(bk / factorial(2 * (k + 1)))
        for k, bk in enumerate(_bernoulli_even(MAX_CORRECTION_TERMS + 1))
    ],
    dtype=np.float64,
)
