import math

import numpy as np
import pytest

from explicit_lb.bandlimited import (
    MajorantParams,
    f_kernel,
    g_kernel,
    h_hat_at_zero,
    log_abs_majorant_h,
    majorant_h,
    majorant_h_hat,
    majorant_h_hat_half,
    majorant_h_hat_quadrature,
    majorant_h_real,
)
from explicit_lb.errors import DomainError, MajorantOverflowError

GRID_PARAMS = [(a, d) for a in (0.1, 0.3, 0.5, 1.0, 2.0) for d in (0.25, 0.5, 1.0, 2.0)]


def _closed_form(p, s):
    """The unfactored expression, fine away from s = +-ia and for moderate arguments."""
    x = p.x
    num = 2 * np.cosh(2 * x) - 2 * np.cos(2 * np.pi * p.delta * s)
    return p.a / (p.a**2 + s * s) * num / (2 * np.sinh(x)) ** 2


def test_kernels():
    assert f_kernel(1, 0) == 1
    assert f_kernel(0.5, 0.5) == 1
    assert f_kernel(0.3, 2) == pytest.approx(0.3 / 4.09, rel=1e-15)
    assert g_kernel(1, 1) == 0
    assert g_kernel(1, 0) == -1
    assert g_kernel(0.5, 2) == pytest.approx(3.75 / 4.25**2, rel=1e-15)


def test_params_validation():
    with pytest.raises(DomainError):
        MajorantParams(0, 1)
    with pytest.raises(DomainError):
        MajorantParams(1, -1)
    assert MajorantParams(1 / math.pi, 1).product_guard
    assert not MajorantParams(0.1, 1).product_guard


@pytest.mark.parametrize("a, d", GRID_PARAMS)
def test_majorizes_on_grid(a, d):
    p = MajorantParams(a, d)
    u = np.concatenate([np.linspace(-50, 50, 20001), np.geomspace(1e-8, 1e4, 2000)])
    h = majorant_h_real(p, u)
    f = f_kernel(a, u)
    assert np.all(h - f >= -1e-12 * f)


@pytest.mark.parametrize("a, d", GRID_PARAMS)
def test_interpolates_at_origin(a, d):
    p = MajorantParams(a, d)
    assert majorant_h_real(p, 0.0) == pytest.approx(1 / a, rel=1e-14)


def test_value_at_three():
    p = MajorantParams(0.5, 1.0)
    assert majorant_h_real(p, 3.0) >= f_kernel(0.5, 3.0) == pytest.approx(0.054054054, abs=1e-9)


@pytest.mark.parametrize("a, d", [(a, d) for a, d in GRID_PARAMS if math.pi * a * d >= 1])
def test_coth_envelope(a, d):
    p = MajorantParams(a, d)
    u = np.linspace(-30, 30, 6001)
    assert np.all(majorant_h_real(p, u) <= 1.725 * f_kernel(a, u) * (1 + 1e-15))


@pytest.mark.parametrize("s", [0.3 + 0.2j, 2 - 1j, -4 + 0.5j, 0.4j, 7.5 + 3j])
def test_complex_values_match_unfactored_form(s):
    p = MajorantParams(0.5, 1.0)
    assert majorant_h(p, s) == pytest.approx(_closed_form(p, s), rel=1e-12)


def test_removable_singularity():
    p = MajorantParams(0.5, 1.0)
    near = majorant_h(p, 0.5j + 1e-9)
    at = majorant_h(p, 0.5j)
    assert abs(near - at) < 1e-7 and math.isfinite(abs(at))


def test_log_path_and_overflow():
    p = MajorantParams(0.5, 1.0)
    s = 3 + 80j
    assert math.log(abs(majorant_h(p, s))) == pytest.approx(log_abs_majorant_h(p, s), rel=1e-12)
    with pytest.raises(MajorantOverflowError):
        majorant_h(p, 400j)


def test_exponential_type():
    # log|h(iy)| = 2 pi Delta y - log(y^2 - a^2) + const + O(e^{-2 pi Delta (y - a)})
    p = MajorantParams(0.5, 1.0)
    slope = (log_abs_majorant_h(p, 100j) - log_abs_majorant_h(p, 50j)) / 50
    expected = 2 * math.pi * p.delta - (math.log(100**2 - 0.25) - math.log(50**2 - 0.25)) / 50
    assert slope == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("a, d", [(0.3, 0.5), (0.5, 1.0), (1.0, 2 / math.pi), (2.0, 0.25)])
def test_h_hat_at_zero(a, d):
    p = MajorantParams(a, d)
    assert majorant_h_hat_quadrature(p, 0.0) == pytest.approx(h_hat_at_zero(p), rel=1e-9)


def test_h_hat_reference():
    assert h_hat_at_zero(MajorantParams(0.5, 2 / math.pi)) == pytest.approx(math.pi / math.tanh(1.0), rel=1e-15)
    assert h_hat_at_zero(MajorantParams(0.5, 2 / math.pi)) == pytest.approx(4.1250220, abs=1e-7)


@pytest.mark.parametrize("d", [0.5, 1.0, 1.7])
def test_half_closed_form(d):
    p = MajorantParams(0.5, d)
    assert majorant_h_hat_half(d, 0) == pytest.approx(math.pi / math.tanh(math.pi * d / 2), rel=1e-14)
    for xi in np.linspace(-d * 0.99, d * 0.99, 9):
        assert majorant_h_hat_half(d, xi) == pytest.approx(majorant_h_hat_quadrature(p, xi), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("a, d", [(0.3, 0.5), (0.5, 1.0), (1.0, 1.0)])
def test_h_hat_support_and_sign(a, d):
    p = MajorantParams(a, d)
    for xi in (d, d + 0.1, 2 * d, -d - 0.1):
        assert majorant_h_hat(p, xi) == 0.0
        assert abs(majorant_h_hat_quadrature(p, xi)) < 1e-9
    inside = [majorant_h_hat(p, xi) for xi in np.linspace(0, d * 0.999, 12)]
    assert all(v > 0 for v in inside)
    assert all(x >= y for x, y in zip(inside, inside[1:]))
