"""Inner loops, each in a numba and a numpy flavour.

The public names at the bottom of the module are bound to one flavour
according to :data:`explicit_lb._accel.USE_NUMBA`. Both flavours are kept
importable under ``*_numba`` / ``*_numpy`` for tests and benchmarks.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, njit

# --------------------------------------------------------------------------
# prime powers up to a limit


@njit
def _prime_powers_numba(limit):
    # odd-only sieve: composite[i] describes 2i + 1
    half = (limit - 1) // 2 + 1
    composite = np.zeros(half, dtype=np.bool_)
    i = 1
    while (2 * i + 1) * (2 * i + 1) <= limit:
        if not composite[i]:
            p = 2 * i + 1
            for j in range(p * p // 2, half, p):
                composite[j] = True
        i += 1
    # base[n] = p when n is a power of the prime p, else 0
    base = np.zeros(limit + 1, dtype=np.int32)
    n_pp = 0
    pk = 2
    while pk <= limit:
        base[pk] = 2
        n_pp += 1
        pk *= 2
    for i in range(1, half):
        if composite[i]:
            continue
        p = 2 * i + 1
        pk = p
        while True:
            base[pk] = p
            n_pp += 1
            if pk > limit // p:
                break
            pk *= p
    powers = np.empty(n_pp, dtype=np.int64)
    bases = np.empty(n_pp, dtype=np.int64)
    idx = 0
    for n in range(2, limit + 1):
        if base[n]:
            powers[idx] = n
            bases[idx] = base[n]
            idx += 1
    return powers, bases


def _prime_powers_numpy(limit):
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    primes = np.nonzero(is_prime)[0].astype(np.int64)
    powers = [primes]
    bases = [primes]
    small = primes[primes * primes <= limit]
    pk = small * small
    while small.size:
        powers.append(pk.copy())
        bases.append(small.copy())
        keep = pk <= limit // small
        small, pk = small[keep], pk[keep] * small[keep]
    powers = np.concatenate(powers)
    bases = np.concatenate(bases)
    order = np.argsort(powers, kind="stable")
    return powers[order], bases[order]


# --------------------------------------------------------------------------
# compensated running sums


@njit
def _kahan_cumsum_numba(values):
    out = np.empty(values.shape[0], dtype=np.float64)
    s = 0.0
    c = 0.0
    for i in range(values.shape[0]):
        # Neumaier's variant: also correct when the addend dominates
        v = values[i]
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out[i] = s + c
    return out


def _kahan_cumsum_numpy(values):
    # 80-bit extended accumulation where the platform has it
    return np.cumsum(np.asarray(values, dtype=np.longdouble)).astype(np.float64)


# --------------------------------------------------------------------------
# sum of the majorant over symmetrised ordinates


@njit
def _majorant_pair_sum_numba(ordinates, shift, a, delta, inv_sinh2):
    s = 0.0
    c = 0.0
    a2 = a * a
    w = math.pi * delta
    for i in range(ordinates.shape[0]):
        g = ordinates[i]
        u1 = shift - g
        u2 = shift + g
        sn1 = math.sin(w * u1)
        sn2 = math.sin(w * u2)
        v = a / (a2 + u1 * u1) * (1.0 + sn1 * sn1 * inv_sinh2) + a / (a2 + u2 * u2) * (1.0 + sn2 * sn2 * inv_sinh2)
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


def _majorant_pair_sum_numpy(ordinates, shift, a, delta, inv_sinh2):
    g = np.asarray(ordinates, dtype=np.float64)
    u1 = shift - g
    u2 = shift + g
    w = math.pi * delta
    v1 = a / (a * a + u1 * u1) * (1.0 + np.sin(w * u1) ** 2 * inv_sinh2)
    v2 = a / (a * a + u2 * u2) * (1.0 + np.sin(w * u2) ** 2 * inv_sinh2)
    return math.fsum(np.concatenate([v1, v2]))


# --------------------------------------------------------------------------
# digamma for complex arguments with positive real part
#
# Recurrence upward until |z| >= 12, then the asymptotic series through z^-16.

_DIGAMMA_COEFFS = np.array(
    [1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132, -691 / 32760, 1 / 12, -3617 / 8160],
    dtype=np.float64,
)


@njit
def _digamma_numba(z, coeffs):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        w = z[i]
        acc = 0.0 + 0.0j
        while abs(w) < 12.0:
            acc -= 1.0 / w
            w += 1.0
        w2 = 1.0 / (w * w)
        series = 0.0 + 0.0j
        p = w2
        for k in range(coeffs.shape[0]):
            series += coeffs[k] * p
            p *= w2
        out[i] = acc + np.log(w) - 0.5 / w - series
    return out


def _digamma_numpy(z, coeffs):
    w = np.array(z, dtype=np.complex128, copy=True)
    acc = np.zeros_like(w)
    small = np.abs(w) < 12.0
    while np.any(small):
        acc[small] -= 1.0 / w[small]
        w[small] += 1.0
        small = np.abs(w) < 12.0
    w2 = 1.0 / (w * w)
    series = np.zeros_like(w)
    p = w2.copy()
    for c in coeffs:
        series += c * p
        p *= w2
    return acc + np.log(w) - 0.5 / w - series


# --------------------------------------------------------------------------

if USE_NUMBA:
    prime_powers = _prime_powers_numba
    kahan_cumsum = _kahan_cumsum_numba
    majorant_pair_sum = _majorant_pair_sum_numba
    _digamma_impl = _digamma_numba
else:
    prime_powers = _prime_powers_numpy
    kahan_cumsum = _kahan_cumsum_numpy
    majorant_pair_sum = _majorant_pair_sum_numpy
    _digamma_impl = _digamma_numpy


def digamma_array(z):
    z = np.ascontiguousarray(np.atleast_1d(np.asarray(z, dtype=np.complex128)))
    return _digamma_impl(z, _DIGAMMA_COEFFS)
