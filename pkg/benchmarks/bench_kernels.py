"""Compare the compiled and python kernel backends on the hot operations.

Run as:  python benchmarks/bench_kernels.py

Times the three kernels that dominate a solve (pivoted QR at reduction
time, thin QR once per iteration, triangular solves twice per
iteration) plus one end-to-end solve per backend. The compiled backend
is skipped with a note when the extension is not built.
"""

import time

import numpy as np

from lpfollow.generate import random_full_rank
from lpfollow.linalg import pykernels
from lpfollow.model import Iterate
from lpfollow.newton import newton_direction
from lpfollow.trust_region import solve

try:
    from lpfollow.linalg import _qrcore
except ImportError:
    _qrcore = None


def _time(fn, repeat=5):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _row(label, py_s, c_s):
    speedup = f"{py_s / c_s:6.1f}x" if c_s else "     --"
    c_text = f"{c_s * 1e3:10.2f}" if c_s else "        --"
    print(f"{label:<34} {py_s * 1e3:10.2f} {c_text} {speedup}")


def bench_kernels():
    rng = np.random.default_rng(7)
    print(f"{'kernel':<34} {'python ms':>10} {'compiled ms':>10} {'speedup':>8}")

    for m, n in [(30, 300), (50, 500)]:
        a = rng.standard_normal((m, n))
        tall = rng.standard_normal((n, m))
        tri = np.triu(rng.standard_normal((m, m))) + np.eye(m) * m
        rhs = rng.standard_normal(m)

        _row(
            f"pivoted_qr {m}x{n}",
            _time(lambda: pykernels.pivoted_qr(a, 1e-8)),
            _time(lambda: _qrcore.pivoted_qr(a, 1e-8)) if _qrcore else None,
        )
        _row(
            f"thin_qr {n}x{m}",
            _time(lambda: pykernels.thin_qr(tall)),
            _time(lambda: _qrcore.thin_qr(tall)) if _qrcore else None,
        )
        _row(
            f"solve_upper {m}x{m}",
            _time(lambda: pykernels.solve_upper(tri, rhs), repeat=50),
            _time(lambda: _qrcore.solve_upper(tri, rhs), repeat=50) if _qrcore else None,
        )


def bench_direction():
    lp, _ = random_full_rank(40, 400, seed=11)
    n = lp.n
    z = Iterate(np.ones(n), np.zeros(lp.m), np.ones(n))
    print()
    best = _time(lambda: newton_direction(lp, z, 0.05))
    print(f"newton_direction m=40 n=400 (active backend): {best * 1e3:.2f} ms")


def bench_solve():
    lp, _ = random_full_rank(30, 300, seed=3)
    t0 = time.perf_counter()
    report = solve(lp)
    dt = time.perf_counter() - t0
    print(
        f"full solve m=30 n=300 (active backend): {dt * 1e3:.1f} ms, "
        f"status={report.status}, iterations={report.successful_iterations}"
    )


if __name__ == "__main__":
    from lpfollow.linalg import BACKEND

    print(f"active backend: {BACKEND}")
    if _qrcore is None:
        print("compiled backend not built; showing python timings only\n")
    bench_kernels()
    bench_direction()
    bench_solve()
