"""L(s, chi), zeta(s) and their logarithmic derivatives.

Everything rests on an Euler-Maclaurin evaluation of the Hurwitz zeta
function zeta(s, w) and its s-derivative, vectorised over w. For a
non-principal character the poles at s = 1 of the individual zeta(s, a/q)
cancel in L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q), so the Hurwitz path
works with the regular part zeta(s, w) - 1/(s - 1) throughout; this keeps
sigma close to 1 free of cancellation. At s = 1 itself the Laurent
coefficients (generalised Stieltjes constants) are used instead.

Error estimates are heuristic (size of the first omitted Euler-Maclaurin
term plus a rounding allowance), not enclosures.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arith_primes import EULER_GAMMA, LambdaTable
from .characters import DirichletCharacter, is_primitive
from .errors import DomainError, NearZeroError, PoleError, PrecisionError
from .special import even_bernoulli_over_factorial

N_BERNOULLI = 15  # corrections through B_30
NEAR_ZERO = 1e-10
POLE_GUARD = 1e-6
MAX_TERMS = 10**7
_EPS = np.finfo(float).eps
_B2K = even_bernoulli_over_factorial(N_BERNOULLI + 1)


@dataclass(frozen=True)
class EvaluationResult:
    value: complex
    est_error: float
    method: str  # dirichlet_series | hurwitz_euler_maclaurin | stieltjes_laurent

    def __post_init__(self):
        if not math.isfinite(self.est_error) or self.est_error < 0:
            raise ValueError(f"bad error estimate {self.est_error}")


def _phi1(z):
    """(e^z - 1)/z and its derivative, stable at small |z|."""
    small = np.abs(z) < 1e-3
    zz = np.where(small, 1.0, z)
    ez = np.exp(zz)
    f = np.where(small, 1 + z / 2 + z * z / 6 + z**3 / 24, (ez - 1) / zz)
    df = np.where(small, 0.5 + z / 3 + z * z / 8 + z**3 / 30, (zz * ez - ez + 1) / (zz * zz))
    return f, df


def _hurwitz_em(s: complex, w: np.ndarray, regular: bool):
    """Euler-Maclaurin for zeta(s, w) and d/ds zeta(s, w).

    With ``regular`` the pole 1/(s-1) is removed from the value (and
    -1/(s-1)^2 from the derivative). Returns (values, derivatives, error).
    """
    s = complex(s)
    w = np.asarray(w, dtype=np.float64)
    M = int(math.ceil(abs(s))) + 30
    while True:
        n = np.arange(M, dtype=np.float64)[:, None] + w[None, :]
        logn = np.log(n)
        terms = np.exp(-s * logn)
        head = terms.sum(axis=0)
        dhead = -(logn * terms).sum(axis=0)
        N = M + w
        logN = np.log(N)
        NmS = np.exp(-s * logN)
        if regular:
            f, df = _phi1((1 - s) * logN)
            integral = -logN * f
            dintegral = logN * logN * df
        else:
            integral = N * NmS / (s - 1)
            dintegral = -logN * integral - N * NmS / (s - 1) ** 2
        val = head + integral + 0.5 * NmS
        dval = dhead + dintegral - 0.5 * logN * NmS
        # Bernoulli corrections: B_2k/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
        poch = s
        dpoch = 1.0 + 0j
        power = NmS / N
        for k in range(1, N_BERNOULLI + 2):
            term = _B2K[k - 1] * poch * power
            dterm = _B2K[k - 1] * (dpoch - logN * poch) * power
            if k == N_BERNOULLI + 1:
                omitted = np.maximum(np.abs(term), np.abs(dterm))
                break
            val = val + term
            dval = dval + dterm
            # (s)_{2k+1} = (s)_{2k-1} (s + 2k - 1)(s + 2k)
            a, b = s + 2 * k - 1, s + 2 * k
            dpoch = dpoch * a * b + poch * (a + b)
            poch = poch * a * b
            power = power / (N * N)
        scale = np.maximum(np.abs(val), np.abs(dval))
        if np.all(omitted <= 1e-16 * np.maximum(scale, 1e-300)) or M >= MAX_TERMS:
            break
        M *= 2
    rounding = 4 * _EPS * (np.abs(terms).sum(axis=0) * (1 + np.abs(logn).max()) + np.abs(integral) + np.abs(dintegral))
    err = omitted + rounding
    if M >= MAX_TERMS and np.any(omitted > 1e-16 * scale):
        raise PrecisionError("Euler-Maclaurin did not converge", partial=(val, dval, err))
    return val, dval, err


def hurwitz_zeta(s: complex, w: float) -> EvaluationResult:
    """zeta(s, w) = sum_{n >= 0} (n + w)^-s for Re s > 0, s != 1, 0 < w <= 1."""
    s = complex(s)
    if s.real <= 0:
        raise DomainError("hurwitz_zeta needs Re s > 0")
    if not 0 < w <= 1:
        raise DomainError("hurwitz_zeta needs 0 < w <= 1")
    if abs(s - 1) < POLE_GUARD:
        raise PoleError(f"|s - 1| = {abs(s - 1):.1e} below pole guard; use the Laurent path")
    val, _, err = _hurwitz_em(s, np.array([w]), regular=False)
    return EvaluationResult(complex(val[0]), float(err[0]), "hurwitz_euler_maclaurin")


def hurwitz_zeta_derivative(s: complex, w: float) -> EvaluationResult:
    s = complex(s)
    if abs(s - 1) < POLE_GUARD:
        raise PoleError("derivative requested at the pole")
    _, dval, err = _hurwitz_em(s, np.array([w]), regular=False)
    return EvaluationResult(complex(dval[0]), float(err[0]), "hurwitz_euler_maclaurin")


# --------------------------------------------------------------------------
# Laurent coefficients at s = 1


def _stieltjes_em(order: int, w: np.ndarray, M: int = 40):
    """gamma_order(w) from the defining limit, Euler-Maclaurin at cut M."""
    w = np.asarray(w, dtype=np.float64)
    n = np.arange(M, dtype=np.float64)[:, None] + w[None, :]
    N = M + w
    logN = np.log(N)
    if order == 0:
        head = (1 / n).sum(axis=0)
        val = head - logN + 0.5 / N
        # f = 1/x: f^(m)(x) = (-1)^m m! / x^(m+1)
        deriv = lambda m: (-1) ** m * math.factorial(m) / N ** (m + 1)
    else:
        head = (np.log(n) / n).sum(axis=0)
        val = head - 0.5 * logN**2 + 0.5 * logN / N
        # f = log x / x: f^(m)(x) = (-1)^m m! (log x - H_m) / x^(m+1)
        deriv = lambda m: (-1) ** m * math.factorial(m) * (logN - sum(1 / j for j in range(1, m + 1))) / N ** (m + 1)
    for k in range(1, N_BERNOULLI + 1):
        val = val - _B2K[k - 1] * deriv(2 * k - 1)
    omitted = np.abs(_B2K[N_BERNOULLI] * deriv(2 * N_BERNOULLI + 1))
    return val, omitted + 8 * _EPS * np.abs(head)


def generalized_stieltjes(order: int, w: float) -> float:
    """gamma_0(w) or gamma_1(w), the Laurent coefficients of zeta(s, w) at s = 1."""
    if order not in (0, 1):
        raise DomainError("only orders 0 and 1 are implemented")
    if not 0 < w <= 1:
        raise DomainError("generalized_stieltjes needs 0 < w <= 1")
    val, _ = _stieltjes_em(order, np.array([w]))
    return float(val[0])


# --------------------------------------------------------------------------
# L-functions


def _check_nonprincipal(chi: DirichletCharacter):
    if chi.is_principal:
        raise DomainError("principal character: L(s, chi) has a pole at s = 1")


def L_and_derivative(s: complex, chi: DirichletCharacter):
    """(L(s, chi), L'(s, chi), est_error, method) for non-principal chi."""
    _check_nonprincipal(chi)
    s = complex(s)
    q = chi.modulus
    chi_vals = chi.values()
    a = np.nonzero(chi_vals)[0]
    c = chi_vals[a]
    w = a / q
    logq = math.log(q)
    if s == 1:
        g0, e0 = _stieltjes_em(0, w)
        g1, e1 = _stieltjes_em(1, w)
        L = (c * g0).sum() / q
        dL = -logq * L - (c * g1).sum() / q
        err = (e0.sum() + e1.sum()) / q * (1 + logq)
        return complex(L), complex(dL), float(err), "stieltjes_laurent"
    if s.real <= 0:
        raise DomainError("Re s must be positive")
    val, dval, err = _hurwitz_em(s, w, regular=True)
    qs = cmath.exp(-s * logq)
    L = qs * (c * val).sum()
    dL = -logq * L + qs * (c * dval).sum()
    e = abs(qs) * err.sum() * (1 + logq)
    return complex(L), complex(dL), float(e), "hurwitz_euler_maclaurin"


def L_value(s: complex, chi: DirichletCharacter) -> EvaluationResult:
    L, _, err, method = L_and_derivative(s, chi)
    return EvaluationResult(L, err, method)


def log_deriv_L(sigma: complex, chi: DirichletCharacter) -> EvaluationResult:
    """L'/L(sigma, chi) for non-principal chi; complex sigma is accepted too."""
    L, dL, err, method = L_and_derivative(sigma, chi)
    if abs(L) < NEAR_ZERO:
        raise NearZeroError(f"|L({sigma}, {chi.label})| = {abs(L):.2e} is below {NEAR_ZERO}")
    ratio = dL / L
    return EvaluationResult(ratio, err * (1 + abs(ratio)) / abs(L), method)


def zeta_value(s: complex) -> EvaluationResult:
    return hurwitz_zeta(s, 1.0)


def zeta_logderiv_one_line(t: float) -> EvaluationResult:
    """zeta'/zeta(1 + it) for 1 <= |t| <= 10^4."""
    if abs(t) < 1:
        raise DomainError("need |t| >= 1")
    if abs(t) > 1e4:
        raise PrecisionError(f"|t| = {abs(t)} beyond the 10^4 evaluation window")
    val, dval, err = _hurwitz_em(complex(1, t), np.array([1.0]), regular=False)
    z, dz, e = complex(val[0]), complex(dval[0]), float(err[0])
    ratio = dz / z
    return EvaluationResult(ratio, e * (1 + abs(ratio)) / abs(z), "hurwitz_euler_maclaurin")


def b_chi(chi: DirichletCharacter) -> EvaluationResult:
    """-L'/L(1, conj chi) - log(q/2pi) + gamma, for primitive non-principal chi."""
    if not is_primitive(chi):
        raise DomainError(f"{chi.label} is not primitive")
    r = log_deriv_L(1.0, chi.conjugate())
    val = -r.value - math.log(chi.modulus / (2 * math.pi)) + EULER_GAMMA
    return EvaluationResult(val, r.est_error, r.method)


# --------------------------------------------------------------------------
# truncated Dirichlet series, used as an independent check for sigma > 1


def log_deriv_L_series(sigma: float, chi: DirichletCharacter, table: LambdaTable, N: int | None = None) -> EvaluationResult:
    """-sum_{n <= N} Lambda(n) chi(n) n^-sigma with a heuristic tail estimate.

    The tail is estimated by partial summation from |psi(u, chi)| <= C sqrt(u)
    log^2 u, with C twice the largest ratio observed on [sqrt(N), N].
    """
    if sigma <= 1:
        raise DomainError("series check needs sigma > 1")
    N = table.limit if N is None else N
    if N > table.limit:
        raise DomainError("N beyond the table")
    k = table.count_upto(N)
    n = table.prime_powers[:k]
    chi_vals = chi.values()[n % chi.modulus]
    lam = table.log_p[:k]
    weights = lam * chi_vals
    terms = weights * np.exp(-sigma * np.log(n.astype(np.float64)))
    val = -(math.fsum(terms.real) + 1j * math.fsum(terms.imag))
    psi_chi = np.cumsum(weights)
    nf = n.astype(np.float64)
    sel = nf >= math.sqrt(N)
    C = 2 * float(np.max(np.abs(psi_chi[sel]) / (np.sqrt(nf[sel]) * np.log(nf[sel]) ** 2)))
    beta = sigma - 0.5
    lN = math.log(N)
    tail = C * N**-beta * (lN**2 + sigma * (lN**2 / beta + 2 * lN / beta**2 + 2 / beta**3))
    return EvaluationResult(val, tail + 1e-14 * abs(val), "dirichlet_series")
