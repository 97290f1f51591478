"""Benchmark: compiled int64 row-reduction kernel vs pure-Python fallback.

Times the raw kernel on representative matrix shapes and one full
construction workload under each backend.  Results are exact and identical
either way; only the wall time differs.

Usage: python benchmarks/bench_kernel.py
"""

import random
import time

from zappatic import linalg
from zappatic.constructions import build_X


def _matrices(nr, nc, height, count, seed):
    rng = random.Random(seed)
    return [
        [[rng.randint(-height, height) for _ in range(nc)] for _ in range(nr)]
        for _ in range(count)
    ]


def time_kernel(fn, mats, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for m in mats:
            fn(m)
        best = min(best, time.perf_counter() - t0)
    return best


def time_workload(repeats=2):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        build_X(14, 4, seed=3)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    if "compiled" not in linalg.available_backends():
        print("compiled kernel not built; nothing to compare")
        return
    cases = [
        ("rank 4x6   h=31  x4000", "rank", _matrices(4, 6, 31, 4000, 1)),
        ("rank 12x14 h=31  x1000", "rank", _matrices(12, 14, 31, 1000, 2)),
        ("rref 4x6   h=31  x4000", "rref", _matrices(4, 6, 31, 4000, 3)),
        ("rref 12x14 h=9   x1000", "rref", _matrices(12, 14, 9, 1000, 4)),
        ("rref 20x22 h=5   x200", "rref", _matrices(20, 22, 5, 200, 5)),
    ]
    rows = []
    for label, op, mats in cases:
        fn = getattr(linalg, op)
        linalg.set_backend("compiled")
        sample_c = [fn(m) for m in mats[:5]]
        t_c = time_kernel(fn, mats)
        linalg.set_backend("python")
        sample_p = [fn(m) for m in mats[:5]]
        t_p = time_kernel(fn, mats)
        assert sample_c == sample_p, "backends disagree"
        rows.append((label, t_p, t_c))

    linalg.set_backend("compiled")
    t_work_c = time_workload()
    linalg.set_backend("python")
    t_work_p = time_workload()
    rows.append(("build_X(14,4) end to end", t_work_p, t_work_c))

    print(f"{'workload':<28} {'python':>9} {'compiled':>9} {'speedup':>8}")
    for label, t_p, t_c in rows:
        print(f"{label:<28} {t_p:>8.3f}s {t_c:>8.3f}s {t_p / t_c:>7.1f}x")
    linalg.set_backend("compiled")


if __name__ == "__main__":
    main()
