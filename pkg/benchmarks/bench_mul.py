"""Timing of schoolbook vs Karatsuba multiplication across degrees.

Used to pick ``KARATSUBA_THRESHOLD``.  Run with ``python benchmarks/bench_mul.py``.
"""

import random
import time

from qsupercong import bigpoly
from qsupercong.bigpoly import Polynomial, poly_mul, poly_mul_schoolbook


def bench(deg, digits, reps=5):
    rng = random.Random(deg)
    a = Polynomial([rng.randint(-10**digits, 10**digits) for _ in range(deg + 1)])
    b = Polynomial([rng.randint(-10**digits, 10**digits) for _ in range(deg + 1)])
    t = time.perf_counter()
    for _ in range(reps):
        poly_mul_schoolbook(a, b)
    school = (time.perf_counter() - t) / reps
    t = time.perf_counter()
    for _ in range(reps):
        poly_mul(a, b)
    kara = (time.perf_counter() - t) / reps
    return school, kara


if __name__ == "__main__":
    for threshold in (8, 16, 24, 32, 48, 64):
        bigpoly.KARATSUBA_THRESHOLD = threshold
        rows = []
        for deg in (64, 256, 1024):
            for digits in (60, 300):
                s, k = bench(deg, digits)
                rows.append(f"deg={deg} dig={digits} school={s*1e3:.1f}ms kara={k*1e3:.1f}ms")
        print(f"threshold={threshold}")
        for r in rows:
            print("   ", r)
