"""Randomised invariants across modules."""
import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from explicit_lb.arith_primes import build_lambda_table
from explicit_lb.bandlimited import MajorantParams, f_kernel, majorant_h, majorant_h_hat, majorant_h_real
from explicit_lb.bounds import LOG10, prime_sum_bound, sigma_range, thm11_bound, thm13_bound, zero_sum_bound
from explicit_lb.characters import character_group, enumerate_characters, euler_phi, factorize

TABLE = build_lambda_table(20_000)

a_values = st.floats(min_value=0.05, max_value=5.0)
deltas = st.floats(min_value=0.1, max_value=4.0)
reals = st.floats(min_value=-200.0, max_value=200.0)


@settings(max_examples=200, deadline=None)
@given(a_values, deltas, reals)
def test_majorant_dominates(a, delta, u):
    p = MajorantParams(a, delta)
    assert majorant_h_real(p, u) >= f_kernel(a, u) * (1 - 1e-12)


@settings(max_examples=100, deadline=None)
@given(a_values, deltas, st.floats(min_value=-50.0, max_value=50.0))
def test_majorant_complex_agrees_on_real_line(a, delta, u):
    p = MajorantParams(a, delta)
    v = majorant_h(p, complex(u, 0.0))
    assert abs(v.imag) <= 1e-12 * abs(v.real)
    assert math.isclose(v.real, majorant_h_real(p, u), rel_tol=1e-10)


@settings(max_examples=100, deadline=None)
@given(a_values, deltas, st.floats(min_value=0.0, max_value=1.5))
def test_fourier_support(a, delta, frac):
    p = MajorantParams(a, delta)
    xi = frac * delta
    v = majorant_h_hat(p, xi)
    if xi > delta:
        assert v == 0.0
    else:
        assert v >= -1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=10**12))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert math.prod(p**k for p, k in f.items()) == n


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=3, max_value=60))
def test_group_order(q):
    assert math.prod(character_group(q).orders) == euler_phi(q)
    assert len(enumerate_characters(q)) == euler_phi(q)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=3, max_value=40), st.data())
def test_character_multiplicative(q, data):
    chars = enumerate_characters(q)
    chi = chars[data.draw(st.integers(0, len(chars) - 1))]
    m = data.draw(st.integers(1, 500))
    n = data.draw(st.integers(1, 500))
    assert abs(chi.evaluate(m * n) - chi.evaluate(m) * chi.evaluate(n)) < 1e-12
    assert abs(chi.evaluate(n + q) - chi.evaluate(n)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=2.0, max_value=19_999.0), st.floats(min_value=2.0, max_value=19_999.0))
def test_psi_monotone_and_chebyshev(x, y):
    lo, hi = sorted((x, y))
    assert TABLE.psi(lo) <= TABLE.psi(hi)
    # Rosser-Schoenfeld: psi(x) < 1.04 x
    assert TABLE.psi(hi) < 1.04 * hi


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=30, max_value=3000), st.floats(min_value=0.0, max_value=1.0))
def test_reports_reevaluate(k, frac):
    L = k * LOG10
    lo, hi = sigma_range(L)
    sigma = lo + frac * (hi - lo)
    for rep in (thm11_bound(log_q=L), thm13_bound(sigma, log_q=L), zero_sum_bound(sigma, log_q=L),
                prime_sum_bound(sigma, 0.75, log_q=L)):
        assert math.isclose(rep.total, rep.reevaluate(), rel_tol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=30, max_value=3000), st.floats(min_value=0.0, max_value=1.0))
def test_thm13_full_below_stated(k, frac):
    L = k * LOG10
    lo, hi = sigma_range(L)
    sigma = lo + frac * (hi - lo)
    assume(0.5 < sigma < 1)
    assert thm13_bound(sigma, log_q=L).extras["full_le_simplified"]
