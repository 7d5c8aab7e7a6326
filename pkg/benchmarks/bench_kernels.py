"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from twistfm import kernels, linalg, mukai
from twistfm.lattice import BilinearLattice

TRITANGENT = mukai.K3Surface(BilinearLattice([[-2, 3], [3, -2]]))


def cases():
    g0 = mukai.moduli_picard(TRITANGENT, mukai.fibration_vector((1, 1), 0)).picard.gram
    g1 = mukai.moduli_picard(TRITANGENT, mukai.fibration_vector((1, 1), 1)).picard.gram
    yield "congruence rank 3, bound 3 (exhausts box)", kernels.congruence_search, (g0, g1, 3)
    yield "congruence rank 3, bound 5 (finds witness)", kernels.congruence_search, (g0, g1, 5)
    g = [[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 2, 1], [0, 0, 1, -4]]
    u = [[1, 0, 0, 4], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    g2 = linalg.matmul(linalg.matmul(linalg.transpose(u), g), u)
    yield "congruence rank 4, bound 2", kernels.congruence_search, (g, g2, 2)
    rows = [[2, -1, 0, 2, 1, -2, 1, 0], [0, 2, 1, -1, 2, 1, 0, -2], [1, 0, -2, 1, 0, 2, 2, 1]]
    yield "slack search, 8 unknowns, bound 2", kernels.slack_search, (rows, [17, 19, 23], 2, 8)

def bench(fn, args, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(*args, backend=backend)
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'case':52s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn, fargs in cases():
        t_py, r_py = bench(fn, fargs, "python", args.repeat)
        if "cython" in backends:
            t_cy, r_cy = bench(fn, fargs, "cython", args.repeat)
            assert r_py == r_cy, f"backends disagree on {name}"
            print(f"{name:52s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")
        else:
            print(f"{name:52s} {t_py:10.4f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
