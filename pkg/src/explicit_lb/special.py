"""Bernoulli numbers and the digamma function."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._kernels import digamma_array


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        s = Fraction(0)
        c = 1  # binomial(m + 1, k)
        for k in range(m):
            s += c * b[k]
            c = c * (m + 1 - k) // (k + 1)
        b.append(-s / (m + 1))
    return b[n]


def even_bernoulli_over_factorial(kmax: int) -> np.ndarray:
    """B_{2k}/(2k)! for k = 1..kmax as floats."""
    out = np.empty(kmax)
    fact = 1
    for k in range(1, kmax + 1):
        fact *= (2 * k - 1) * (2 * k)
        out[k - 1] = float(bernoulli(2 * k) / fact)
    return out


def digamma(z):
    """Gamma'/Gamma for Re z > 0; scalar in, scalar out."""
    arr = np.asarray(z)
    out = digamma_array(arr.ravel())
    if arr.ndim == 0:
        return complex(out[0])
    return out.reshape(arr.shape)
