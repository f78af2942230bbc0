"""Hot numeric kernels.

Every kernel exists twice: a loop version compiled with numba and a
vectorized numpy version. ``CAPTRANS_NUMBA`` picks which one the public
names below are bound to; both are always importable through ``KERNELS``
so tests and the benchmark can compare them directly.
"""

import numpy as np

from ._jit import NUMBA_ENABLED, NUMBA_AVAILABLE, njit

# simplex status codes shared with lp.py
OPTIMAL, UNBOUNDED, ITERATION_LIMIT = 0, 2, 3

RATIO_EPS = 1e-12
SINGULAR_EPS = 1e-10


# ---------------------------------------------------------------------------
# subset lattice transforms
# ---------------------------------------------------------------------------

def _subset_sum_loops(v, n, sign):
    out = v.copy()
    size = 1 << n
    for i in range(n):
        bit = 1 << i
        for s in range(size):
            if s & bit:
                out[s] += sign * out[s ^ bit]
    return out


def _subset_sum_numpy(v, n, sign):
    out = np.array(v, dtype=np.float64, copy=True)
    for i in range(n):
        w = out.reshape(-1, 2, 1 << i)
        w[:, 1, :] += sign * w[:, 0, :]
    return out


def _maxplus_forward_loops(v, n):
    size = 1 << n
    out = np.zeros(size)
    for s in range(1, size):
        best = -np.inf
        for i in range(n):
            bit = 1 << i
            if s & bit:
                if v[s ^ bit] > best:
                    best = v[s ^ bit]
        out[s] = v[s] - best
    return out


def _maxplus_forward_numpy(v, n):
    size = 1 << n
    idx = np.arange(size)
    best = np.full(size, -np.inf)
    for i in range(n):
        bit = 1 << i
        has = (idx & bit) != 0
        best[has] = np.maximum(best[has], v[idx[has] ^ bit])
    out = v - best
    out[0] = 0.0
    return out


def _maxplus_backward_loops(m, n):
    size = 1 << n
    mu = np.zeros(size)
    for s in range(1, size):
        best = -np.inf
        for i in range(n):
            bit = 1 << i
            if s & bit:
                if mu[s ^ bit] > best:
                    best = mu[s ^ bit]
        mu[s] = best + m[s]
    return mu


def _maxplus_backward_numpy(m, n):
    size = 1 << n
    idx = np.arange(size)
    card = np.zeros(size, dtype=np.int64)
    for i in range(n):
        card += (idx >> i) & 1
    mu = np.zeros(size)
    for k in range(1, n + 1):
        layer = idx[card == k]
        best = np.full(layer.size, -np.inf)
        for i in range(n):
            bit = 1 << i
            has = (layer & bit) != 0
            best[has] = np.maximum(best[has], mu[layer[has] ^ bit])
        mu[layer] = best + m[layer]
    return mu


# ---------------------------------------------------------------------------
# simplex pivoting (Bland's rule) on a dense tableau
#
# T has m constraint rows plus a final reduced-cost row; the last column is
# the right-hand side, T[m, -1] holds minus the current objective.
# ---------------------------------------------------------------------------

def _simplex_loops(T, basis, n_eligible, max_iter, tol):
    m = T.shape[0] - 1
    ncol = T.shape[1]
    rhs = ncol - 1
    it = 0
    while True:
        enter = -1
        for j in range(n_eligible):
            if T[m, j] < -tol:
                enter = j
                break
        if enter < 0:
            return OPTIMAL, it

        best = np.inf
        for i in range(m):
            a = T[i, enter]
            if a > tol:
                r = max(T[i, rhs], 0.0) / a
                if r < best:
                    best = r
        if best == np.inf:
            return UNBOUNDED, it
        leave = -1
        for i in range(m):
            a = T[i, enter]
            if a > tol:
                r = max(T[i, rhs], 0.0) / a
                if r <= best + RATIO_EPS:
                    if leave < 0 or basis[i] < basis[leave]:
                        leave = i

        if it >= max_iter:
            return ITERATION_LIMIT, it

        piv = T[leave, enter]
        for k in range(ncol):
            T[leave, k] /= piv
        for i in range(m + 1):
            if i != leave:
                f = T[i, enter]
                if f != 0.0:
                    for k in range(ncol):
                        T[i, k] -= f * T[leave, k]
                    T[i, enter] = 0.0
        T[leave, enter] = 1.0
        basis[leave] = enter
        it += 1


def _simplex_numpy(T, basis, n_eligible, max_iter, tol):
    m = T.shape[0] - 1
    it = 0
    while True:
        neg = np.flatnonzero(T[m, :n_eligible] < -tol)
        if neg.size == 0:
            return OPTIMAL, it
        enter = neg[0]

        col = T[:m, enter]
        pos = col > tol
        if not pos.any():
            return UNBOUNDED, it
        ratios = np.full(m, np.inf)
        ratios[pos] = np.maximum(T[:m, -1][pos], 0.0) / col[pos]
        cand = np.flatnonzero(ratios <= ratios.min() + RATIO_EPS)
        leave = cand[np.argmin(basis[cand])]

        if it >= max_iter:
            return ITERATION_LIMIT, it

        T[leave] /= T[leave, enter]
        f = T[:, enter].copy()
        f[leave] = 0.0
        T -= np.outer(f, T[leave])
        T[:, enter] = 0.0
        T[leave, enter] = 1.0
        basis[leave] = enter
        it += 1


# ---------------------------------------------------------------------------
# square basis systems for the vertex-enumeration oracle
# ---------------------------------------------------------------------------

def _basis_solve_loops(A, b, combos):
    K, r = combos.shape
    X = np.zeros((K, r))
    ok = np.zeros(K, dtype=np.bool_)
    M = np.empty((r, r + 1))
    for k in range(K):
        for i in range(r):
            for j in range(r):
                M[i, j] = A[i, combos[k, j]]
            M[i, r] = b[i]
        singular = False
        for c in range(r):
            p = c
            for i in range(c + 1, r):
                if abs(M[i, c]) > abs(M[p, c]):
                    p = i
            if abs(M[p, c]) < SINGULAR_EPS:
                singular = True
                break
            if p != c:
                for j in range(r + 1):
                    tmp = M[c, j]
                    M[c, j] = M[p, j]
                    M[p, j] = tmp
            for i in range(c + 1, r):
                f = M[i, c] / M[c, c]
                if f != 0.0:
                    for j in range(c, r + 1):
                        M[i, j] -= f * M[c, j]
        if singular:
            continue
        for i in range(r - 1, -1, -1):
            s = M[i, r]
            for j in range(i + 1, r):
                s -= M[i, j] * X[k, j]
            X[k, i] = s / M[i, i]
        ok[k] = True
    return X, ok


def _basis_solve_numpy(A, b, combos, chunk=20000):
    K, r = combos.shape
    X = np.zeros((K, r))
    ok = np.zeros(K, dtype=bool)
    for start in range(0, K, chunk):
        sl = slice(start, min(start + chunk, K))
        B = np.transpose(A[:, combos[sl]], (1, 0, 2))
        good = np.linalg.matrix_rank(B, tol=SINGULAR_EPS) == r
        if good.any():
            sol = np.linalg.solve(B[good], np.broadcast_to(b, (int(good.sum()), r))[..., None])
            block = X[sl]
            block[good] = sol[..., 0]
            X[sl] = block
        ok[sl] = good
    return X, ok


KERNELS = {
    "numpy": {
        "subset_sum": _subset_sum_numpy,
        "maxplus_forward": _maxplus_forward_numpy,
        "maxplus_backward": _maxplus_backward_numpy,
        "simplex": _simplex_numpy,
        "basis_solve": _basis_solve_numpy,
    }
}

if NUMBA_AVAILABLE:
    KERNELS["numba"] = {
        "subset_sum": njit(cache=True)(_subset_sum_loops),
        "maxplus_forward": njit(cache=True)(_maxplus_forward_loops),
        "maxplus_backward": njit(cache=True)(_maxplus_backward_loops),
        "simplex": njit(cache=True)(_simplex_loops),
        "basis_solve": njit(cache=True)(_basis_solve_loops),
    }

BACKEND = "numba" if NUMBA_ENABLED else "numpy"
_active = KERNELS[BACKEND]

subset_sum = _active["subset_sum"]
maxplus_forward = _active["maxplus_forward"]
maxplus_backward = _active["maxplus_backward"]
simplex = _active["simplex"]
basis_solve = _active["basis_solve"]
