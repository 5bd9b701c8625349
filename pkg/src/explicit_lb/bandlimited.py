"""The Poisson kernel f_a, the kernel g_a and a bandlimited majorant of f_a.

The majorant of exponential type 2 pi Delta is

    h(s) = a/(a^2 + s^2) * (2 cosh(2 pi a Delta) - 2 cos(2 pi Delta s)) / (2 sinh(pi a Delta))^2.

With S(z) = sin(z)/z the bracket factors, giving

    h(s) = a (pi Delta)^2 S(pi Delta (s - ia)) S(pi Delta (s + ia)) / sinh^2(pi a Delta),

which has no removable singularity left to divide through, and on the real
line h(u) = f_a(u) (1 + sin^2(pi Delta u) / sinh^2(pi a Delta)).
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import DomainError, MajorantOverflowError, PrecisionError

SERIES_RADIUS = 1e-3
LOG_SWITCH = 300.0   # |Im z| above which sin is evaluated in log space
_LOG_MAX = 709.0
QUAD_EPSABS = 1e-13


@dataclass(frozen=True)
class MajorantParams:
    a: float
    delta: float
    product_guard: bool = field(init=False)

    def __post_init__(self):
        if not (self.a > 0 and self.delta > 0):
            raise DomainError(f"need a > 0 and delta > 0, got a={self.a}, delta={self.delta}")
        object.__setattr__(self, "product_guard", math.pi * self.a * self.delta >= 1)

    @property
    def x(self) -> float:
        """pi a Delta."""
        return math.pi * self.a * self.delta

    @property
    def inv_sinh2(self) -> float:
        """1/sinh^2(pi a Delta), finite for every x > 0."""
        e = math.exp(-2 * self.x)
        return 4 * e / (-math.expm1(-2 * self.x)) ** 2

    @property
    def log_sinh2(self) -> float:
        x = self.x
        return 2 * (x + math.log(-math.expm1(-2 * x) / 2))


def f_kernel(a: float, x):
    """a/(a^2 + x^2)."""
    return a / (a * a + np.square(x))


def g_kernel(a: float, x):
    """(x^2 - a^2)/(x^2 + a^2)^2."""
    x2 = np.square(x)
    return (x2 - a * a) / (x2 + a * a) ** 2


# --------------------------------------------------------------------------
# h on the real line


def majorant_h_real(params: MajorantParams, u):
    """h(u) for real u (scalar or array)."""
    u = np.asarray(u, dtype=np.float64)
    s = np.sin(math.pi * params.delta * u)
    out = f_kernel(params.a, u) * (1 + s * s * params.inv_sinh2)
    return float(out) if out.ndim == 0 else out


# --------------------------------------------------------------------------
# h in the complex plane


def _log_sin(z: complex) -> complex:
    """A branch of log sin z, accurate for large |Im z|."""
    if z.imag < 0:
        return _log_sin(-z) + 1j * math.pi
    # sin z = e^{-iz} (e^{2iz} - 1)/(2i), and |e^{2iz}| <= 1 here
    return -1j * z + cmath.log((cmath.exp(2j * z) - 1) / 2j)


def _log_sinc(z: complex) -> complex:
    if abs(z) < SERIES_RADIUS:
        z2 = z * z
        return cmath.log(1 - z2 / 6 + z2 * z2 / 120)
    return _log_sin(z) - cmath.log(z)


def _sinc(z: complex) -> complex:
    if abs(z) < SERIES_RADIUS:
        z2 = z * z
        return 1 - z2 / 6 + z2 * z2 / 120
    return cmath.sin(z) / z


def log_majorant_h(params: MajorantParams, s: complex) -> complex:
    """A branch of log h(s); the real part is log|h(s)|."""
    s = complex(s)
    w = math.pi * params.delta
    z1 = w * (s - 1j * params.a)
    z2 = w * (s + 1j * params.a)
    return math.log(params.a) + 2 * math.log(w) + _log_sinc(z1) + _log_sinc(z2) - params.log_sinh2


def log_abs_majorant_h(params: MajorantParams, s: complex) -> float:
    return log_majorant_h(params, s).real


def majorant_h(params: MajorantParams, s: complex) -> complex:
    """h(s) for complex s."""
    s = complex(s)
    w = math.pi * params.delta
    if s.imag == 0:
        return complex(majorant_h_real(params, s.real))
    if w * (abs(s.imag) + params.a) < LOG_SWITCH:
        z1 = w * (s - 1j * params.a)
        z2 = w * (s + 1j * params.a)
        return params.a * w * w * _sinc(z1) * _sinc(z2) * params.inv_sinh2
    logh = log_majorant_h(params, s)
    if logh.real > _LOG_MAX:
        raise MajorantOverflowError(f"|h({s})| = exp({logh.real:.1f}) overflows")
    return cmath.exp(logh)


# --------------------------------------------------------------------------
# Fourier transform


def _cos_coeffs(params: MajorantParams) -> tuple[float, float]:
    """h(u) = f_a(u) (c0 - c1 cos(2 pi Delta u))."""
    c1 = 0.5 * params.inv_sinh2
    return 1 + c1, c1


def _fourier_f(a: float, omega: float) -> float:
    """2 * integral_0^inf f_a(u) cos(omega u) du, by quadrature."""
    with warnings.catch_warnings():
        # QUADPACK warns per cycle; the returned error estimate is checked below
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        # |F(omega) - F(0)| <= pi a omega, below rounding once a omega < 1e-16
        if a * omega < 1e-16:
            f = lambda u: a / (a * a + u * u)
            val, err = integrate.quad(f, 0, np.inf, epsabs=QUAD_EPSABS, epsrel=1e-13, limit=200)
        else:
            # with v = omega u the integrand is f_b(v) cos v, b = a omega: unit frequency
            # for every omega, so small omega cannot push the cut out of range
            b = a * omega
            f = lambda v: 1 / (b * (1 + (v / b) ** 2))
            g = lambda v: f(v) * math.cos(v)
            # below v = 1 the peak of width b is not oscillatory: plain quadrature on decades
            edges = [0.0]
            e = b
            while e < 1:
                edges.append(e)
                e *= 10
            if b < 1:
                edges.append(1.0)
            val, err = 0.0, 0.0
            for lo, hi in zip(edges[:-1], edges[1:]):
                v, e_ = integrate.quad(g, lo, hi, epsabs=QUAD_EPSABS, limit=200)
                val, err = val + v, err + e_
            start = edges[-1]
            cut = 20 * max(b, 1.0) + 2 * math.pi
            v1, e1 = integrate.quad(f, start, cut, weight="cos", wvar=1.0, epsabs=QUAD_EPSABS, limit=400)
            v2, e2 = integrate.quad(f, cut, np.inf, weight="cos", wvar=1.0, epsabs=QUAD_EPSABS, limlst=200)
            val, err = val + v1 + v2, err + e1 + e2
    if not math.isfinite(val) or err > 1e-6:
        raise PrecisionError(f"Fourier quadrature at omega={omega} did not converge (err {err:.1e})")
    return 2 * val


def majorant_h_hat_quadrature(params: MajorantParams, xi: float) -> float:
    """Quadrature for h-hat(xi) without using the support property."""
    c0, c1 = _cos_coeffs(params)
    a, d = params.a, params.delta
    xi = abs(xi)
    two_pi = 2 * math.pi
    return (
        c0 * _fourier_f(a, two_pi * xi)
        - 0.5 * c1 * (_fourier_f(a, two_pi * abs(xi - d)) + _fourier_f(a, two_pi * (xi + d)))
    )


def majorant_h_hat_half(delta: float, xi: float) -> float:
    """Closed form of h-hat for a = 1/2."""
    xi = abs(xi)
    if xi >= delta:
        return 0.0
    r = math.pi * (delta - xi)
    return math.pi * 2 * math.sinh(r) / (math.exp(math.pi * delta) * (-math.expm1(-math.pi * delta)) ** 2)


def majorant_h_hat(params: MajorantParams, xi: float) -> float:
    """h-hat(xi) = integral of h(u) e^{-2 pi i u xi}; zero for |xi| >= Delta."""
    if abs(xi) >= params.delta:
        return 0.0
    if params.a == 0.5:
        return majorant_h_hat_half(params.delta, xi)
    return majorant_h_hat_quadrature(params, xi)


def h_hat_at_zero(params: MajorantParams) -> float:
    """pi coth(pi a Delta)."""
    return math.pi / math.tanh(params.x)
