"""Both sides of the Guinand-Weil explicit formula for the majorant h.

For zeta and the test function u -> h(t - u) the identity reads

    sum_gamma h(t - gamma) = 2 Re h(t - i/2) - (log pi / 2 pi) h^(0)
        + (1/2pi) int h(t - u) Re psi(1/4 + iu/2) du
        - (1/pi) sum_n Lambda(n) n^-1/2 cos(t log n) h^(log n / 2pi),

where psi = Gamma'/Gamma and the zero sum runs over all ordinates, positive
and negative. The prime sum is finite because h^ vanishes outside
[-Delta, Delta]. The zero side is summed over a finite table, and the
omitted zeros are bounded using h <= coth^2(pi a Delta) f_a together with an
explicit bound for the error term in the zero-counting function.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import integrate

from . import _kernels
from .arith_primes import EULER_GAMMA, LambdaTable
from .bandlimited import (
    MajorantParams,
    _cos_coeffs,
    f_kernel,
    h_hat_at_zero,
    majorant_h,
    majorant_h_hat,
    majorant_h_real,
)
from .characters import DirichletCharacter
from .errors import (
    CoverageError,
    DomainError,
    MonotonicityError,
    PrecisionError,
    TableRangeError,
    ZeroTableError,
)

COUNT_TOLERANCE = 2
QUAD_TOL = 1e-11
ZERO_RECIPROCAL_TARGET = 2 + EULER_GAMMA - math.log(4 * math.pi)


@dataclass(frozen=True, eq=False)
class ZeroDataset:
    ordinates: np.ndarray = field(repr=False)
    height: float
    source: str
    kind: str = "zeta"                      # zeta | dirichlet
    character: DirichletCharacter | None = None
    # ordinates of the conjugate character's zeros, for complex characters;
    # None means the zero set is symmetric about the real axis
    negative_ordinates: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        g = self.ordinates
        if g.size and (g[0] <= 0 or np.any(np.diff(g) <= 0)):
            raise MonotonicityError("ordinates must be positive and strictly increasing")
        if self.kind not in ("zeta", "dirichlet"):
            raise DomainError(f"unknown zero-set kind {self.kind!r}")

    @property
    def count(self) -> int:
        return int(self.ordinates.size)

    def mirrored(self) -> np.ndarray:
        """All ordinates, negative ones included, in ascending order."""
        neg = self.ordinates if self.negative_ordinates is None else self.negative_ordinates
        return np.concatenate([-neg[::-1], self.ordinates])


def zero_count_main(T: float) -> float:
    """(T/2pi) log(T/2pi e) + 7/8."""
    return T / (2 * math.pi) * math.log(T / (2 * math.pi * math.e)) + 7 / 8


def zero_count_error(T: float) -> float:
    """Bound for |N(T) - zero_count_main(T)|, valid for T >= e."""
    T = max(T, math.e)
    return 0.112 * math.log(T) + 0.278 * math.log(math.log(T)) + 2.510


def _parse_zeros(lines, source: str):
    values = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            v = float(text)
        except ValueError:
            raise ZeroTableError(f"cannot parse {text!r} as an ordinate", line=lineno) from None
        if not math.isfinite(v) or v <= 0:
            raise ZeroTableError(f"ordinate {text} is not a positive number", line=lineno)
        if values and v <= values[-1]:
            raise MonotonicityError(f"ordinate {text} does not exceed the previous {values[-1]!r}", line=lineno)
        values.append(v)
    return np.array(values, dtype=np.float64)


def load_zeros(path, kind: str = "zeta", character: DirichletCharacter | None = None) -> ZeroDataset:
    """Read a zero table: one decimal ordinate per line, '#' comments, LF or CRLF."""
    path = Path(path)
    with open(path, encoding="ascii", newline=None) as fh:
        g = _parse_zeros(fh, str(path))
    height = float(g[-1]) if g.size else 0.0
    if kind == "zeta" and g.size:
        expected = zero_count_main(height)
        if abs(g.size - expected) > COUNT_TOLERANCE:
            raise ZeroTableError(
                f"{g.size} ordinates up to {height} but about {expected:.1f} zeros expected; table is incomplete"
            )
    return ZeroDataset(ordinates=g, height=height, source=str(path), kind=kind, character=character)


# --------------------------------------------------------------------------
# tails over omitted zeros


def _integral(f, lo, hi=np.inf):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, lo, hi, epsabs=1e-15, epsrel=1e-10, limit=400)
    return val + err


def density_tail(F, T: float) -> float:
    """Upper bound for sum_{gamma > T} F(gamma) over zeta ordinates.

    F must be nonnegative and decreasing on [T, inf). Partial summation
    against N(u) - N(T) <= M(u) - M(T) + E(u) + E(T), where M is the main
    term and E the error bound, gives

        int_T^inf F(u) (log(u/2pi)/2pi + E'(u)) du + 2 F(T) E(T).
    """
    if T < math.e:
        T = math.e

    def dE(u):
        lu = math.log(u)
        return 0.112 / u + 0.278 / (u * lu)

    body = _integral(lambda u: F(u) * (math.log(u / (2 * math.pi)) / (2 * math.pi) + dE(u)), T)
    return body + 2 * F(T) * zero_count_error(T)


# --------------------------------------------------------------------------
# zero side


def zero_side(params: MajorantParams, shift: float, zeros: ZeroDataset) -> tuple[float, float]:
    """(sum over tabulated +-gamma of h(shift - gamma), bound for the omitted zeros)."""
    if zeros.count == 0:
        return 0.0, math.inf
    g = np.ascontiguousarray(zeros.ordinates)
    if zeros.negative_ordinates is None:
        value = float(_kernels.majorant_pair_sum(g, float(shift), params.a, params.delta, params.inv_sinh2))
    else:
        allg = zeros.mirrored()
        value = math.fsum(np.asarray(majorant_h_real(params, shift - allg)))
    T = zeros.height
    if T <= abs(shift) + params.a:
        return value, math.inf
    C = (1 / math.tanh(params.x)) ** 2
    a = params.a
    F = lambda u: C * (a / (a * a + (u - shift) ** 2) + a / (a * a + (u + shift) ** 2))
    return value, density_tail(F, T)


def zero_side_mirrored(params: MajorantParams, shift: float, zeros: ZeroDataset) -> float:
    """Direct sum of h(shift - gamma) over explicitly mirrored ordinates."""
    return math.fsum(majorant_h_real(params, shift - zeros.mirrored()))


# --------------------------------------------------------------------------
# archimedean and prime side


@dataclass(frozen=True)
class ArchPrimeComponents:
    pole_term: float        # 2 Re h(shift - i/2), zeta only
    conductor_term: float   # coefficient times h^(0)
    gamma_integral: float
    prime_sum: float
    gamma_integral_error: float
    prime_count: int

    @property
    def total(self) -> float:
        return math.fsum([self.pole_term, self.conductor_term, self.gamma_integral, self.prime_sum])


def _re_digamma(z0: float):
    """u -> Re psi(z0 + iu/2)."""

    def f(u):
        return float(_kernels.digamma_array(complex(z0, 0.5 * u))[0].real)

    return f


def _quad(f, lo, hi, weight=None, wvar=None, points=None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if hi == np.inf and weight is not None:
            val, err = integrate.quad(f, lo, hi, weight=weight, wvar=wvar, epsabs=QUAD_TOL, limlst=200)
        elif weight is not None:
            val, err = integrate.quad(f, lo, hi, weight=weight, wvar=wvar, epsabs=QUAD_TOL, limit=400)
        else:
            val, err = integrate.quad(f, lo, hi, epsabs=QUAD_TOL, epsrel=1e-12, limit=400, points=points)
    if not math.isfinite(val):
        raise PrecisionError("quadrature returned a non-finite value")
    return val, err


def gamma_integral(params: MajorantParams, shift: float, z0: float) -> tuple[float, float]:
    """(1/2pi) int h(shift - u) Re psi(z0 + iu/2) du and its quadrature error.

    With h = f_a (c0 - c1 cos(2 pi Delta v)) and phi(u) = Re psi(z0 + iu/2)
    even, the integral folds onto [0, inf):

        c0 int phi (f_a(t-u) + f_a(t+u))
      - c1 cos(2pi Delta t) int phi cos(2pi Delta u) (f_a(t-u) + f_a(t+u))
      - c1 sin(2pi Delta t) int phi sin(2pi Delta u) (f_a(t-u) - f_a(t+u)).

    Each piece is split at a cut U beyond the peak at u = |t|: [0, U] by
    adaptive quadrature, [U, inf) by a Fourier-weighted rule.
    """
    a, t = params.a, abs(shift)
    c0, c1 = _cos_coeffs(params)
    phi = _re_digamma(z0)
    w = 2 * math.pi * params.delta
    plus = lambda u: phi(u) * (f_kernel(a, t - u) + f_kernel(a, t + u))
    minus = lambda u: phi(u) * (f_kernel(a, t - u) - f_kernel(a, t + u))
    U = t + 40 * max(a, 1.0)
    pts = [p for p in (t - a, t, t + a) if 0 < p < U]

    total, err = 0.0, 0.0
    v, e = _quad(plus, 0, U, points=pts)
    total += c0 * v
    err += c0 * e
    v, e = _quad(plus, U, np.inf)
    total += c0 * v
    err += c0 * e
    cw, sw = math.cos(w * shift), math.sin(w * shift)
    if c1 and cw:
        v1, e1 = _quad(plus, 0, U, weight="cos", wvar=w)
        v2, e2 = _quad(plus, U, np.inf, weight="cos", wvar=w)
        total -= c1 * cw * (v1 + v2)
        err += c1 * abs(cw) * (e1 + e2)
    if c1 and sw and t:
        v1, e1 = _quad(minus, 0, U, weight="sin", wvar=w)
        v2, e2 = _quad(minus, U, np.inf, weight="sin", wvar=w)
        # minus() uses |t|; the sign of the shift flips the odd part
        sgn = 1.0 if shift >= 0 else -1.0
        total -= c1 * sw * sgn * (v1 + v2)
        err += c1 * abs(sw) * (e1 + e2)
    return total / (2 * math.pi), err / (2 * math.pi)


def _check_table(params: MajorantParams, table: LambdaTable):
    need = math.exp(2 * math.pi * params.delta)
    if table.limit < need:
        raise TableRangeError(f"prime sum needs the table to reach e^(2 pi Delta) = {need:.6g}; limit is {table.limit}")
    return need


def prime_sum(params: MajorantParams, shift: float, table: LambdaTable, chi: DirichletCharacter | None = None):
    """-(1/pi) sum_n Lambda(n) n^-1/2 Re{chi(n) n^-i shift} h^(log n / 2pi); returns (value, terms used)."""
    need = _check_table(params, table)
    k = table.count_upto(need)
    n = table.prime_powers[:k]
    logn = np.log(n.astype(np.float64))
    xi = logn / (2 * math.pi)
    hh = np.array([majorant_h_hat(params, x) for x in xi.tolist()])
    phase = np.exp(-1j * shift * logn)
    if chi is not None:
        phase = phase * chi.values()[n % chi.modulus]
    terms = table.log_p[:k] / np.sqrt(n) * phase.real * hh
    return -math.fsum(terms) / math.pi, int(np.count_nonzero(hh))


def arch_prime_components(params: MajorantParams, shift: float, table: LambdaTable, kind: str = "zeta",
                          chi: DirichletCharacter | None = None) -> ArchPrimeComponents:
    if kind == "zeta":
        pole = 2 * majorant_h(params, complex(shift, -0.5)).real
        cond = -math.log(math.pi) / (2 * math.pi) * h_hat_at_zero(params)
        z0 = 0.25
        chi_arg = None
    elif kind == "dirichlet":
        if chi is None:
            raise DomainError("dirichlet kind needs a character")
        if chi.is_principal:
            raise DomainError("the Dirichlet form needs a non-principal primitive character")
        pole = 0.0
        cond = math.log(chi.modulus / math.pi) / (2 * math.pi) * h_hat_at_zero(params)
        z0 = 0.25 + chi.parity_a / 2
        chi_arg = chi
    else:
        raise DomainError(f"unknown kind {kind!r}")
    gi, gerr = gamma_integral(params, shift, z0)
    ps, count = prime_sum(params, shift, table, chi_arg)
    return ArchPrimeComponents(pole, cond, gi, ps, gerr, count)


def arch_prime_side(params: MajorantParams, shift: float, table: LambdaTable, kind: str = "zeta",
                    chi: DirichletCharacter | None = None) -> float:
    return arch_prime_components(params, shift, table, kind, chi).total


# --------------------------------------------------------------------------
# other zero sums


def zero_reciprocal_sum(zeros: ZeroDataset) -> tuple[float, float]:
    """(sum over tabulated +-gamma of 1/(1/4 + gamma^2), bound for the rest)."""
    if zeros.kind != "zeta":
        raise DomainError("zero_reciprocal_sum is for zeta zeros")
    g = zeros.ordinates
    value = 2 * math.fsum(1 / (0.25 + g * g))
    if zeros.count == 0:
        return 0.0, math.inf
    tail = density_tail(lambda u: 2 / (0.25 + u * u), zeros.height)
    return value, tail


def f_half_zero_sum(t: float, zeros: ZeroDataset) -> tuple[float, float]:
    """(sum over tabulated +-gamma of f_{1/2}(t - gamma), bound for the rest)."""
    if zeros.kind != "zeta":
        raise DomainError("f_half_zero_sum is for zeta zeros")
    if abs(t) > zeros.height / 2:
        raise CoverageError(f"t={t} exceeds half the table height {zeros.height}")
    g = zeros.ordinates
    value = math.fsum(np.concatenate([f_kernel(0.5, t - g), f_kernel(0.5, t + g)]))
    F = lambda u: f_kernel(0.5, u - t) + f_kernel(0.5, u + t)
    return value, density_tail(F, zeros.height)
