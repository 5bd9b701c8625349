import json
import math
import os
import subprocess
import sys

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import digamma
from sympy import primerange

from explicit_lb import _kernels as K
from explicit_lb._accel import NUMBA_AVAILABLE, backend_name
from explicit_lb.bandlimited import MajorantParams


def test_prime_powers_reference():
    powers, bases = K._prime_powers_numpy(100)
    expected = sorted((p**k, p) for p in primerange(2, 101) for k in range(1, 8) if p**k <= 100)
    assert powers.tolist() == [n for n, _ in expected]
    assert bases.tolist() == [p for _, p in expected]


@pytest.mark.parametrize("limit", [2, 3, 4, 100, 1000, 65537, 10**6])
def test_prime_powers_paths_agree(limit):
    a = K._prime_powers_numba(limit)
    b = K._prime_powers_numpy(limit)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_kahan_cumsum():
    rng = np.random.default_rng(1)
    v = rng.uniform(0, 20, 100_000)
    exact = math.fsum(v.tolist())
    for fn in (K._kahan_cumsum_numba, K._kahan_cumsum_numpy):
        out = fn(v)
        assert out.shape == v.shape
        assert abs(out[-1] - exact) <= 4 * np.spacing(exact)
    assert np.allclose(K._kahan_cumsum_numba(v), K._kahan_cumsum_numpy(v), rtol=1e-15, atol=0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), min_size=1, max_size=200))
def test_kahan_matches_fsum(values):
    v = np.array(values)
    out = K._kahan_cumsum_numba(v)
    for i in (0, len(values) // 2, len(values) - 1):
        ref = math.fsum(values[: i + 1])
        assert abs(out[i] - ref) <= 1e-9 * max(1.0, max(abs(x) for x in values))


@pytest.mark.parametrize("a, delta, shift", [(0.3, 0.5, 0.0), (0.5, 1.0, 30.0), (1.0, 1.0, 5.0)])
def test_majorant_pair_sum_paths_agree(a, delta, shift):
    g = np.cumsum(np.random.default_rng(2).uniform(0.1, 2.0, 20_000)) + 14.0
    p = MajorantParams(a, delta)
    fast = K._majorant_pair_sum_numba(g, shift, p.a, p.delta, p.inv_sinh2)
    slow = K._majorant_pair_sum_numpy(g, shift, p.a, p.delta, p.inv_sinh2)
    assert fast == pytest.approx(slow, rel=1e-13)


def test_digamma_against_scipy():
    z = (0.25 + 0.5j * np.linspace(-300, 300, 6001)).astype(np.complex128)
    ref = digamma(z)
    for fn in (K._digamma_numba, K._digamma_numpy):
        assert np.allclose(fn(z, K._DIGAMMA_COEFFS), ref, rtol=1e-13, atol=1e-14)


@pytest.mark.parametrize("z", [0.25, 1.0, 0.75 + 3j, 0.1 + 0.01j, 50 - 20j])
def test_digamma_against_mpmath(z):
    ref = complex(mpmath.digamma(z))
    assert K.digamma_array(z)[0] == pytest.approx(ref, rel=1e-13)


def _probe(env_value):
    env = dict(os.environ)
    env.pop("EXPLICIT_LB_DISABLE_NUMBA", None)
    if env_value is not None:
        env["EXPLICIT_LB_DISABLE_NUMBA"] = env_value
    code = ("import json; from explicit_lb import _kernels as K, _accel as A; "
            "print(json.dumps([A.backend_name(), K.prime_powers.__name__, "
            "K.prime_powers(50)[0].tolist()]))")
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(r.stdout)


@pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba not installed")
def test_env_flag_selects_numpy():
    fast = _probe(None)
    slow = _probe("1")
    assert fast[:2] == ["numba", "_prime_powers_numba"]
    assert slow[:2] == ["numpy", "_prime_powers_numpy"]
    assert fast[2] == slow[2]
    assert _probe("0")[0] == "numba"


def test_backend_name():
    assert backend_name() in ("numba", "numpy")


def test_benchmark_script_runs():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    r = subprocess.run([sys.executable, os.path.join(root, "benchmarks", "bench_kernels.py"),
                        "--repeat", "1", "--limit", "20001", "--zeros", "2000"],
                       capture_output=True, text=True, check=True)
    rows = [line.split() for line in r.stdout.splitlines()[1:] if line.strip()]
    rows = [row for row in rows if row[0] in {"prime_powers", "kahan_cumsum", "majorant_pair_sum", "digamma"}]
    assert len(rows) == 4 and all(row[-1] == "True" for row in rows)
