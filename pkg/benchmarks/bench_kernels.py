"""Compare the numba and numpy kernels on representative inputs.

    python3 benchmarks/bench_kernels.py [--repeat 20]

Each kernel is called once before timing so numba compilation is excluded.
Reported figures are the best wall time over the repeats.
"""

import argparse
import time
from itertools import combinations

import numpy as np

from captrans import _kernels
from captrans.cost import ground_absdiff, lift_tiered
from captrans.lp import _standard_form
from captrans.oracle import _equality_form, _independent_rows
from captrans.sampling import random_capacity
from captrans.setfun import Universe
from captrans.transport import maxplus_lp


def best_of(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def simplex_case(n, seed=0):
    """Phase-1 tableau of a (max,+) transport LP on n elements."""
    u = Universe(n)
    rng = np.random.default_rng(seed)
    lp = maxplus_lp(random_capacity(u, rng), random_capacity(u, rng), lift_tiered(ground_absdiff(u)))
    A, b, _, _ = _standard_form(lp)
    m, N = A.shape
    T = np.zeros((m + 1, N + m + 1))
    T[:m, :N] = A
    T[:m, N:N + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :N] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = np.arange(N, N + m, dtype=np.int64)
    return T, basis, N + m


def cases(repeat):
    v6 = np.sort(np.random.default_rng(1).random(64))
    v6[0] = 0.0
    yield "subset_sum n=6", lambda k: k["subset_sum"](v6, 6, -1.0)
    yield "maxplus_forward n=6", lambda k: k["maxplus_forward"](v6, 6)
    m6 = _kernels.KERNELS["numpy"]["maxplus_forward"](v6, 6)
    yield "maxplus_backward n=6", lambda k: k["maxplus_backward"](m6, 6)

    for n in (2, 3):
        T, basis, ne = simplex_case(n)
        yield (f"simplex phase 1, maxplus n={n}",
               lambda k, T=T, basis=basis, ne=ne: k["simplex"](T.copy(), basis.copy(), ne, 10**6, 1e-9))

    u = Universe(2)
    rng = np.random.default_rng(2)
    lp = maxplus_lp(random_capacity(u, rng), random_capacity(u, rng), lift_tiered(ground_absdiff(u)))
    A, b, _ = _equality_form(lp)
    Ar, br = _independent_rows(A, b)
    combos = np.array(list(combinations(range(A.shape[1]), Ar.shape[0])), dtype=np.int64)
    yield (f"basis_solve, {len(combos)} bases",
           lambda k: k["basis_solve"](np.ascontiguousarray(Ar), np.ascontiguousarray(br), combos))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    backends = [b for b in ("numba", "numpy") if b in _kernels.KERNELS]
    print(f"{'kernel':<36}" + "".join(f"{b:>14}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, call in cases(args.repeat):
        times = [best_of(lambda k=_kernels.KERNELS[b]: call(k), args.repeat) for b in backends]
        row = f"{name:<36}" + "".join(f"{t * 1e6:>11.1f} us" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
