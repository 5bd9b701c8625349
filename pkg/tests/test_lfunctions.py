import cmath
import math

import mpmath
import pytest

from explicit_lb.arith_primes import EULER_GAMMA
from explicit_lb.characters import character_from_label, enumerate_characters, primitive_characters
from explicit_lb.errors import DomainError, PoleError, PrecisionError
from explicit_lb.lfunctions import (
    EvaluationResult,
    L_and_derivative,
    L_value,
    b_chi,
    generalized_stieltjes,
    hurwitz_zeta,
    hurwitz_zeta_derivative,
    log_deriv_L,
    log_deriv_L_series,
    zeta_logderiv_one_line,
    zeta_value,
)

mpmath.mp.dps = 30


def _nonprincipal(q):
    return next(c for c in enumerate_characters(q) if not c.is_principal)


def _mp_L(s, chi, derivative=0):
    """Hurwitz combination at 120 digits; at s = 1 step off by 1e-25 so the pole terms cancel."""
    q = chi.modulus
    vals = chi.values()
    with mpmath.workdps(120):
        z = mpmath.mpf(1) + mpmath.mpf(10) ** -25 if s == 1 else mpmath.mpmathify(s)
        total = mpmath.mpc(0)
        for a in range(1, q):
            if vals[a] == 0:
                continue
            w = mpmath.mpf(a) / q
            if derivative:
                term = mpmath.zeta(z, w, 1) - mpmath.log(q) * mpmath.zeta(z, w)
            else:
                term = mpmath.zeta(z, w)
            total += complex(vals[a]) * term * mpmath.power(q, -z)
        return complex(total)


@pytest.mark.parametrize("s, w, expected", [
    (2, 1.0, math.pi**2 / 6),
    (2, 0.5, math.pi**2 / 2),
    (0.5, 1.0, -1.4603545088095868),
])
def test_hurwitz_reference_values(s, w, expected):
    r = hurwitz_zeta(s, w)
    assert abs(r.value - expected) < 1e-12
    assert r.est_error < 1e-10


@pytest.mark.parametrize("s, w", [(0.7 + 3j, 0.3), (1.5, 0.4), (3 - 2j, 0.9), (1.0001, 0.25), (0.2 + 40j, 0.7)])
def test_hurwitz_against_mpmath(s, w):
    ref = complex(mpmath.zeta(s, w))
    assert abs(hurwitz_zeta(s, w).value - ref) <= 1e-11 * max(1, abs(ref))
    dref = complex(mpmath.zeta(s, w, 1))
    assert abs(hurwitz_zeta_derivative(s, w).value - dref) <= 1e-10 * max(1, abs(dref))


def test_hurwitz_domain():
    with pytest.raises(PoleError):
        hurwitz_zeta(1.0, 0.5)
    with pytest.raises(DomainError):
        hurwitz_zeta(-0.5, 0.5)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 1.5)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0.0)


def test_stieltjes():
    assert generalized_stieltjes(0, 1.0) == pytest.approx(EULER_GAMMA, abs=1e-13)
    assert generalized_stieltjes(1, 1.0) == pytest.approx(float(mpmath.stieltjes(1)), abs=1e-12)
    assert generalized_stieltjes(0, 0.5) == pytest.approx(EULER_GAMMA + 2 * math.log(2), abs=1e-13)
    for w in (0.1, 0.3, 0.77):
        assert generalized_stieltjes(0, w) == pytest.approx(-float(mpmath.digamma(w)), abs=1e-12)
        assert generalized_stieltjes(1, w) == pytest.approx(float(mpmath.stieltjes(1, w)), abs=1e-11)


def test_classical_L_values():
    assert abs(L_value(1, _nonprincipal(4)).value - math.pi / 4) < 1e-10
    assert abs(L_value(1, _nonprincipal(3)).value - math.pi / (3 * math.sqrt(3))) < 1e-10


@pytest.mark.parametrize("label, s", [("5.1", 1), ("5.1", 0.8), ("5.1", 2 + 1j), ("7.2", 1.3), ("12.3", 0.6 + 5j)])
def test_L_against_mpmath(label, s):
    chi = character_from_label(label)
    L, dL, err, _ = L_and_derivative(s, chi)
    assert abs(L - _mp_L(s, chi)) < 1e-11
    assert abs(dL - _mp_L(s, chi, 1)) < 1e-9


def test_log_deriv_mod4_closed_form():
    chi = _nonprincipal(4)
    closed = EULER_GAMMA + 2 * math.log(2) + 3 * math.log(math.pi) - 4 * math.lgamma(0.25)
    assert log_deriv_L(1, chi).value.real == pytest.approx(closed, abs=1e-12)
    b = b_chi(chi)
    assert b.value.imag == 0
    assert b.value.real == pytest.approx(-closed - math.log(4 / (2 * math.pi)) + EULER_GAMMA, abs=1e-12)


def test_b_real_for_real_characters():
    for q in (5, 8, 12, 13, 24):
        for chi in primitive_characters(q):
            if chi.is_real:
                assert abs(b_chi(chi).value.imag) < 1e-13


def test_b_needs_primitive():
    with pytest.raises(DomainError):
        b_chi(character_from_label("6.1"))


def test_principal_rejected():
    with pytest.raises(DomainError):
        log_deriv_L(1.5, character_from_label("7.0"))


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_continuity_through_one(k):
    chi = character_from_label("5.1")
    centre = log_deriv_L(1, chi).value
    for s in (1 - 10.0**-k, 1 + 10.0**-k):
        v = log_deriv_L(s, chi).value
        # the log derivative has slope O(1) at s = 1
        assert abs(v - centre) < 10.0**-k * 10 + 1e-8


def test_series_agrees_at_three_halves(small_table):
    for label in ("5.1", "7.3", "11.4", "13.5"):
        chi = character_from_label(label)
        a = log_deriv_L(1.5, chi)
        b = log_deriv_L_series(1.5, chi, small_table)
        assert abs(a.value - b.value) <= a.est_error + b.est_error


def test_series_requires_sigma_above_one(small_table):
    with pytest.raises(DomainError):
        log_deriv_L_series(1.0, character_from_label("5.1"), small_table)


def test_zeta_on_one_line():
    z = zeta_value(1 + 10j).value
    assert abs(z - complex(mpmath.zeta(1 + 10j))) < 1e-12
    r10 = zeta_logderiv_one_line(10).value
    ref = complex(mpmath.zeta(1 + 10j, 1, 1) / mpmath.zeta(1 + 10j))
    assert abs(r10 - ref) < 1e-11
    assert zeta_logderiv_one_line(-10).value == pytest.approx(r10.conjugate(), abs=1e-13)
    assert abs(zeta_logderiv_one_line(100).value) <= 2 * math.log(math.log(100)) + 10


def test_zeta_one_line_window():
    with pytest.raises(DomainError):
        zeta_logderiv_one_line(0.5)
    with pytest.raises(PrecisionError):
        zeta_logderiv_one_line(2e4)


def test_evaluation_result_checks_error():
    with pytest.raises(ValueError):
        EvaluationResult(1.0, -1.0, "x")
    with pytest.raises(ValueError):
        EvaluationResult(1.0, math.nan, "x")
