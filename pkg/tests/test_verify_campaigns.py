import math

import numpy as np
import pytest
from scipy.special import polygamma

from explicit_lb.arith_primes import EULER_GAMMA, build_lambda_table
from explicit_lb.errors import DomainError
from explicit_lb import verify_campaigns as V


@pytest.fixture(scope="module")
def tiny():
    return build_lambda_table(10**5)


def _brute_mertens(x):
    # sum_{n <= x} Lambda(n)/n by trial factorisation, independent of the sieve
    s = []
    for n in range(2, int(x) + 1):
        m, p = n, 2
        while m % p:
            p += 1
        while m % p == 0:
            m //= p
        if m == 1:
            s.append(math.log(p) / n)
    return math.fsum(s)


def test_lemma31_first_verified(tiny):
    r = V.verify_lemma31_first(tiny)
    assert r.status == "verified" and r.claimed
    assert r.range == (60.0, 90.0)
    assert r.worst_margin > 0 and 60 <= r.worst_point <= 90
    assert r.violations == []


def _brute_psi(x):
    return math.fsum(math.log(p) for p in range(2, int(x) + 1) for k in range(1, 8)
                     if p**k <= x and all(p % d for d in range(2, int(p**0.5) + 1)))


def test_lemma31_first_margin_matches_brute_force(tiny):
    r = V.verify_lemma31_first(tiny)
    x = r.worst_point
    if x != int(x):
        pytest.skip("worst point is an interior stationary point")
    candidates = []
    for y, cut in ((x, x), (x, x - 1)):     # value at x, then left limit
        rhs = math.log(y) - EULER_GAMMA + (_brute_psi(cut) - y) / y + 0.24 / math.sqrt(y)
        candidates.append(rhs - _brute_mertens(cut))
    assert min(abs(c - r.worst_margin) for c in candidates) < 1e-12


def test_lemma31_second_small_range(tiny):
    r = V.verify_lemma31_second(tiny, hi=1e5)
    assert r.status == "verified"
    assert r.checkpoints > 2 * 9000


def test_ranges_beyond_table(tiny):
    with pytest.raises(DomainError):
        V.verify_lemma31_second(tiny, hi=1e6)


def test_explore_below_range_fails(tiny):
    r = V.verify_lemma31_first(tiny, lo=2, hi=60, claimed=False)
    assert not r.claimed
    assert r.status == "violated"


def test_schoenfeld_small(tiny):
    two, one = V.verify_psi_schoenfeld(tiny, limit=1e5)
    assert two.claim_id == "psi_two_sided" and one.claim_id == "psi_one_sided"
    assert two.status == one.status == "verified"


def test_schoenfeld_two_sided_fails_below_59(tiny):
    two, _ = V.verify_psi_schoenfeld(tiny, limit=100, two_sided_from=2)
    assert two.status == "violated"


def test_ramare_scan(small_table):
    r = V.find_ramare_counterexamples(small_table, x_max=1e6)
    assert not r.claimed
    assert r.status == "violated"
    assert any(x >= 1e4 for x in r.violations)
    assert r.worst_margin < 0


def test_ramare_recheck(small_table):
    r = V.find_ramare_counterexamples(small_table, x_max=1e6)
    big = [x for x in r.violations if x >= 1e4]
    sample = big[:: max(1, len(big) // 50)]
    checks = V.recheck_ramare(small_table, sample)
    assert all(c["confirmed"] for c in checks)
    x = sample[0]
    dev = _brute_mertens(x) - math.log(x) + EULER_GAMMA
    assert checks[0]["deviation"] == pytest.approx(dev, abs=1e-10)


def test_ramare_recheck_between_jumps(small_table):
    c = V.recheck_ramare(small_table, [500.5])[0]
    dev = _brute_mertens(500) - math.log(500.5) + EULER_GAMMA
    assert c["deviation"] == c["left_deviation"] == pytest.approx(dev, abs=1e-12)
    assert c["confirmed"] == (abs(dev) > 0.0067 / math.log(500.5))


def test_optimize_lambda():
    lam, const = V.optimize_lambda()
    assert 2.18615 <= lam <= 2.18625
    assert -0.49895 <= const <= -0.49885
    assert abs(V.first_order_residual(lam)) < 1e-9
    # phi is convex here: neighbours are larger
    assert V._phi(lam) < V._phi(lam - 1e-3) and V._phi(lam) < V._phi(lam + 1e-3)


def test_trivial_series():
    v = V.trivial_series()
    ref = float(polygamma(1, 0.25)) / 4
    assert ref <= v <= ref + 1e-6
    assert V.trivial_series(1000) >= ref


def test_quadrature_constants():
    checks = {c.name: c for c in V.quadrature_constants()}
    assert set(checks) >= {"1.725", "0.298", "0.596", "0.541", "4.3", "1.338", "2.079"}
    for c in checks.values():
        assert 0 <= c.margin <= 2e-3, (c.name, c.computed)
    assert checks["1.725"].computed == pytest.approx(1 / math.tanh(1) ** 2, rel=1e-15)
    assert checks["0.596"].computed == pytest.approx(2 * checks["0.298"].computed, rel=1e-15)


def test_classify_thresholds():
    x = np.array([1.0, 2.0, 3.0])
    lhs = np.array([1.0, 1.0, 1.0])
    r = V._classify("t", 1, 3, x, lhs, np.array([2.0, 1.0, 1.5]))
    assert r.status == "inconclusive" and r.near_threshold == [2.0]
    r = V._classify("t", 1, 3, x, lhs, np.array([2.0, 0.5, 1.5]))
    assert r.status == "violated" and r.violations == [2.0] and r.worst_point == 2.0
    r = V._classify("t", 1, 3, x, lhs, lhs + 1)
    assert r.status == "verified"
    assert r.to_dict()["range"] == [1.0, 3.0]
