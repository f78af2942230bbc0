import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from captrans import _kernels
from captrans.lp import LinearProgram, solve

BACKENDS = sorted(_kernels.KERNELS)
needs_numba = pytest.mark.skipif("numba" not in _kernels.KERNELS, reason="numba not installed")


@pytest.mark.parametrize("backend", BACKENDS)
def test_subset_sum_roundtrip(backend):
    k = _kernels.KERNELS[backend]["subset_sum"]
    v = np.random.default_rng(0).random(32)
    back = k(k(v, 5, -1.0), 5, 1.0)
    np.testing.assert_allclose(back, v, atol=1e-12)


@needs_numba
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_backends_agree_on_transforms(n, seed):
    v = np.sort(np.random.default_rng(seed).random(1 << n))
    v[0] = 0.0
    a, b = _kernels.KERNELS["numba"], _kernels.KERNELS["numpy"]
    for sign in (-1.0, 1.0):
        np.testing.assert_allclose(a["subset_sum"](v, n, sign), b["subset_sum"](v, n, sign), atol=1e-12)
    np.testing.assert_allclose(a["maxplus_forward"](v, n), b["maxplus_forward"](v, n), atol=1e-15)
    np.testing.assert_allclose(a["maxplus_backward"](v, n), b["maxplus_backward"](v, n), atol=1e-15)


@needs_numba
def test_backends_agree_on_basis_solves():
    rng = np.random.default_rng(3)
    A = rng.integers(-1, 2, size=(4, 9)).astype(float)
    A[3] = A[0] + A[1]  # forces singular 4x4 selections alongside regular ones
    b = rng.random(4)
    from itertools import combinations

    combos = np.array(list(combinations(range(9), 4)))
    xa, oka = _kernels.KERNELS["numba"]["basis_solve"](A, b, combos)
    xb, okb = _kernels.KERNELS["numpy"]["basis_solve"](A, b, combos)
    assert not oka.any() and not okb.any()
    A[3] = rng.random(9)
    xa, oka = _kernels.KERNELS["numba"]["basis_solve"](A, b, combos)
    xb, okb = _kernels.KERNELS["numpy"]["basis_solve"](A, b, combos)
    np.testing.assert_array_equal(oka, okb)
    np.testing.assert_allclose(xa[oka], xb[okb], atol=1e-8)


@needs_numba
def test_backends_follow_the_same_pivots(monkeypatch):
    rng = np.random.default_rng(11)
    n, m = 4, 5
    cost = rng.random(n * m)
    p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(m))
    A = np.zeros((n + m, n * m))
    for i in range(n):
        A[i, i * m:(i + 1) * m] = 1
    for j in range(m):
        A[n + j, j::m] = 1
    lp = LinearProgram.from_arrays(range(n * m), cost, A_eq=A, b_eq=np.r_[p, q])
    out = {}
    for backend in BACKENDS:
        monkeypatch.setattr(_kernels, "simplex", _kernels.KERNELS[backend]["simplex"])
        out[backend] = solve(lp)
    a, b = out["numba"], out["numpy"]
    assert a.iterations == b.iterations
    np.testing.assert_allclose(a.x, b.x, atol=1e-12)
    assert a.objective == pytest.approx(b.objective, abs=1e-12)


@pytest.mark.parametrize("flag, want", [("0", "numpy"), ("1", "numba" if "numba" in _kernels.KERNELS else "numpy")])
def test_env_flag_selects_backend(flag, want):
    import os
    import subprocess
    import sys

    env = dict(os.environ, CAPTRANS_NUMBA=flag)
    code = "from captrans import _kernels; print(_kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == want
