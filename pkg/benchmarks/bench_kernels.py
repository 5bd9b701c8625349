"""Time the numba and numpy flavours of each hot kernel side by side.

    python benchmarks/bench_kernels.py [--repeat 5] [--limit 4000001]

Each kernel is run once untimed first so numba compile time is excluded,
then the best of ``--repeat`` runs is reported. Outputs of the two flavours
are compared as a sanity check.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from explicit_lb import _kernels as K
from explicit_lb._accel import NUMBA_AVAILABLE
from explicit_lb.bandlimited import MajorantParams


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(limit, n_zeros):
    rng = np.random.default_rng(0)
    logs = np.log(rng.integers(2, 10**6, size=limit // 10).astype(np.float64))
    zeros = np.cumsum(rng.uniform(0.1, 2.0, size=n_zeros)) + 14.0
    p = MajorantParams(0.5, 1.0)
    z = 0.25 + 0.5j * np.linspace(-500, 500, 200_001)
    return [
        ("prime_powers", (limit,), K._prime_powers_numba, K._prime_powers_numpy),
        ("kahan_cumsum", (logs,), K._kahan_cumsum_numba, K._kahan_cumsum_numpy),
        ("majorant_pair_sum", (zeros, 30.0, p.a, p.delta, p.inv_sinh2),
         K._majorant_pair_sum_numba, K._majorant_pair_sum_numpy),
        ("digamma", (z, K._DIGAMMA_COEFFS), K._digamma_numba, K._digamma_numpy),
    ]


def agree(a, b) -> bool:
    if isinstance(a, tuple):
        return all(agree(x, y) for x, y in zip(a, b))
    return bool(np.allclose(a, b, rtol=1e-12, atol=1e-12))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--limit", type=int, default=4_000_001)
    ap.add_argument("--zeros", type=int, default=100_000)
    args = ap.parse_args(argv)
    if not NUMBA_AVAILABLE:
        print("numba is not installed; both columns time the numpy flavour")
    print(f"{'kernel':<20} {'numba [s]':>11} {'numpy [s]':>11} {'speedup':>8}  agree")
    for name, call_args, fast, slow in cases(args.limit, args.zeros):
        t_fast = best_of(lambda: fast(*call_args), args.repeat)
        t_slow = best_of(lambda: slow(*call_args), args.repeat)
        ok = agree(fast(*call_args), slow(*call_args))
        print(f"{name:<20} {t_fast:11.5f} {t_slow:11.5f} {t_slow / t_fast:8.1f}  {ok}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
