#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs identical workloads through both kernel modules and prints a timing
table plus the worst observed disagreement. The numba pass includes an
untimed warm-up so JIT compilation is excluded from the figures.

Usage:  python3 benchmarks/benchmark_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from zetastrips import backend
from zetastrips._bernoulli import BERN_OVER_FACT

K_CORR = 12
LN = np.log(np.arange(1.0, 8192.0))


def n_trunc_for(t: float) -> int:
    return max(2, math.ceil(1.2 * (abs(t) + 10.0)))


def workload_pointwise(mod) -> list[complex]:
    """Scattered single-point evaluations across the supported region."""
    out = []
    for i in range(400):
        sigma = -3.0 + 10.0 * ((i * 37) % 100) / 100.0
        t = 2.0 + 4500.0 * ((i * 61) % 400) / 400.0
        n = n_trunc_for(t)
        re, im, _ = mod.zeta_em(sigma, t, n, K_CORR, LN)
        out.append(complex(re, im))
    return out


def workload_fused(mod) -> list[complex]:
    """Value+derivative pairs as used by the contour tracer."""
    out = []
    for i in range(400):
        sigma = 0.5 + 6.0 * ((i * 29) % 80) / 80.0
        t = 10.0 + 1800.0 * ((i * 53) % 300) / 300.0
        n = n_trunc_for(t)
        zr, zi, dr, di, _, _ = mod.zeta_em_with_deriv(sigma, t, n, K_CORR, LN)
        out.append(complex(zr, zi))
        out.append(complex(dr, di))
    return out


def workload_hardy_scan(mod) -> list[float]:
    """Dense Hardy-Z scan, the zero finder's inner loop."""
    ts = np.arange(10.0, 400.0, 0.05)
    ns = np.array([n_trunc_for(t) for t in ts], dtype=np.int64)
    return list(mod.hardy_z_many(ts, ns, K_CORR, LN))


WORKLOADS = [
    ("pointwise zeta (400 pts)", workload_pointwise),
    ("fused zeta+deriv (400 pts)", workload_fused),
    ("Hardy Z scan (7800 pts)", workload_hardy_scan),
]


def run(repeat: int) -> None:
    numpy_mod = backend._load("numpy")
    try:
        numba_mod = backend._load("numba")
    except ImportError:
        numba_mod = None
        print("numba not importable; benchmarking the numpy fallback only\n")

    if numba_mod is not None:
        numba_mod.warmup()
        for _, fn in WORKLOADS:  # compile every kernel before timing
            fn(numba_mod)

    header = f"{'workload':<28} {'numpy':>10} {'numba':>10} {'speedup':>9}  agreement"
    print(header)
    print("-" * len(header))
    assert BERN_OVER_FACT[0] != 0.0  # kernels share these tables

    for label, fn in WORKLOADS:
        t_np = min(_timed(fn, numpy_mod) for _ in range(repeat))
        ref = fn(numpy_mod)
        if numba_mod is None:
            print(f"{label:<28} {t_np * 1e3:>8.1f}ms {'-':>10} {'-':>9}")
            continue
        t_nb = min(_timed(fn, numba_mod) for _ in range(repeat))
        got = fn(numba_mod)
        worst = max(
            abs(a - b) / max(1.0, abs(a)) for a, b in zip(ref, got)
        )
        print(
            f"{label:<28} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms "
            f"{t_np / t_nb:>8.1f}x  max rel diff {worst:.2e}"
        )


def _timed(fn, mod) -> float:
    start = time.perf_counter()
    fn(mod)
    return time.perf_counter() - start


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3, help="timing repetitions")
    run(ap.parse_args().repeat)


if __name__ == "__main__":
    main()
