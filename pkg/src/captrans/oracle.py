"""Brute-force cross-checks for desk-sized instances.

``enumerate_optimum`` visits every basis of a small LP and keeps the best
feasible vertex; it shares nothing with the simplex code beyond the
``LinearProgram`` container. ``direct_transform_check`` re-evaluates both
set-function transforms by their literal definitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import InfeasibleEverywhere, TooLarge, UnboundedOracle
from .lp import Constraint, LinearProgram
from .setfun import Capacity, mobius, maxplus, popcount, submasks

MAX_VARS = 20
MAX_ROWS = 16
FEAS_TOL = 1e-9


@dataclass
class VertexEnumeration:
    lp: LinearProgram
    vertices: list = field(default_factory=list)  # (x, objective) pairs
    bases_examined: int = 0
    rank: int = 0


def _equality_form(lp: LinearProgram):
    A_eq, b_eq, A_ub, b_ub = lp.arrays()
    n, k = lp.num_vars, len(b_ub)
    A = np.zeros((len(b_eq) + k, n + k))
    A[: len(b_eq), :n] = A_eq
    A[len(b_eq):, :n] = A_ub
    A[len(b_eq):, n:] = np.eye(k)
    b = np.concatenate([b_eq, b_ub])
    c = np.concatenate([lp.objective, np.zeros(k)])
    return A, b, c


def _independent_rows(A, b):
    """Drop linearly dependent rows by elimination; raise when inconsistent."""
    M = np.column_stack([A, b]).astype(float)
    rows = M.copy()
    r = 0
    for col in range(A.shape[1]):
        if r == rows.shape[0]:
            break
        p = r + int(np.argmax(np.abs(rows[r:, col])))
        if abs(rows[p, col]) < 1e-10:
            continue
        rows[[r, p]] = rows[[p, r]]
        rows[r + 1:] -= np.outer(rows[r + 1:, col] / rows[r, col], rows[r])
        r += 1
    if rows.shape[0] > r and np.any(np.abs(rows[r:, -1]) > 1e-9):
        raise InfeasibleEverywhere("equality constraints are inconsistent")
    # pick original rows that span the same space, greedily
    basis_rows = []
    for i in range(A.shape[0]):
        trial = basis_rows + [i]
        if np.linalg.matrix_rank(A[trial], tol=1e-10) == len(trial):
            basis_rows = trial
        if len(basis_rows) == r:
            break
    return A[basis_rows], b[basis_rows]


def enumerate_vertices(lp: LinearProgram) -> VertexEnumeration:
    A, b, c = _equality_form(lp)
    N = A.shape[1]
    if N > MAX_VARS or A.shape[0] > MAX_ROWS:
        raise TooLarge(f"{N} variables / {A.shape[0]} rows exceed the oracle caps "
                       f"({MAX_VARS} / {MAX_ROWS})")
    out = VertexEnumeration(lp)
    if A.shape[0] == 0:
        out.vertices.append((np.zeros(lp.num_vars), 0.0))
        out.bases_examined = 1
        return out
    Ar, br = _independent_rows(A, b)
    r = Ar.shape[0]
    out.rank = r
    combos = np.array(list(combinations(range(N), r)), dtype=np.int64)
    out.bases_examined = len(combos)
    X, ok = _kernels.basis_solve(np.ascontiguousarray(Ar), np.ascontiguousarray(br), combos)
    feasible = ok & np.all(X >= -FEAS_TOL, axis=1)
    for k in np.flatnonzero(feasible):
        x = np.zeros(N)
        x[combos[k]] = np.clip(X[k], 0.0, None)
        if np.max(np.abs(A @ x - b)) > 1e-7:
            continue
        out.vertices.append((x[: lp.num_vars], float(c @ x)))
    return out


def _has_descent_ray(lp: LinearProgram) -> bool:
    """Is there d >= 0 with A d = 0 (A d <= 0 for inequality rows) and c.d < 0?

    Normalizing sum(d) = 1 turns the recession cone into a polytope whose
    vertices can be enumerated like any other LP.
    """
    cons = [Constraint(con.coeffs, con.relation, 0.0) for con in lp.constraints]
    cons.append(Constraint(np.ones(lp.num_vars), "=", 1.0))
    ray = LinearProgram(lp.names, lp.objective, tuple(cons))
    try:
        verts = enumerate_vertices(ray).vertices
    except InfeasibleEverywhere:
        return False  # the cone is {0}: no direction can be normalized
    return bool(verts) and min(v for _, v in verts) < -1e-9


def enumerate_optimum(lp: LinearProgram):
    """Minimum objective over all basic feasible solutions and a witness.

    Raises InfeasibleEverywhere when no basis is feasible and UnboundedOracle
    when a feasible point exists along with a descent ray.
    """
    res = enumerate_vertices(lp)
    if not res.vertices:
        raise InfeasibleEverywhere("no basic feasible solution")
    if _has_descent_ray(lp):
        raise UnboundedOracle("objective decreases along a feasible ray")
    k = int(np.argmin([v for _, v in res.vertices]))
    x, obj = res.vertices[k]
    return obj, x


def oracle_status(lp: LinearProgram):
    """(status, objective) in the vocabulary of ``lp.solve``."""
    try:
        obj, _ = enumerate_optimum(lp)
    except InfeasibleEverywhere:
        return "infeasible", float("nan")
    except UnboundedOracle:
        return "unbounded", float("nan")
    return "optimal", obj


def split_absolute(lp: LinearProgram, abs_vars) -> LinearProgram:
    """Alternative linearization of ``min sum w|t|``: t = u - v, cost w(u + v).

    Valid for w >= 0; used to cross-check the slack-variable rewrite.
    """
    abs_vars = set(abs_vars)
    names, obj, cols = [], [], []
    for j, name in enumerate(lp.names):
        if name in abs_vars:
            names += [("u", name), ("v", name)]
            obj += [lp.objective[j], lp.objective[j]]
            cols += [(j, 1.0), (j, -1.0)]
        else:
            names.append(name)
            obj.append(lp.objective[j])
            cols.append((j, 1.0))
    src = np.array([j for j, _ in cols])
    sign = np.array([s for _, s in cols])
    cons = tuple(Constraint(con.coeffs[src] * sign, con.relation, con.rhs) for con in lp.constraints)
    return LinearProgram(tuple(names), np.array(obj), cons)


# -- transforms by definition ------------------------------------------------------

def literal_mobius(values, n: int) -> np.ndarray:
    out = np.zeros(1 << n)
    for a in range(1, 1 << n):
        ca = popcount(a)
        out[a] = sum((-1) ** (ca - popcount(b)) * values[b] for b in submasks(a))
    return out


def literal_maxplus(values, n: int) -> np.ndarray:
    out = np.zeros(1 << n)
    for a in range(1, 1 << n):
        out[a] = values[a] - max(values[b] for b in submasks(a) if b != a)
    return out


@dataclass(frozen=True)
class TransformCheck:
    mobius_diff: float
    maxplus_diff: float
    mobius_values: np.ndarray = field(repr=False)
    maxplus_values: np.ndarray = field(repr=False)

    @property
    def max_diff(self) -> float:
        return max(self.mobius_diff, self.maxplus_diff)


def direct_transform_check(mu: Capacity) -> TransformCheck:
    v = np.asarray(mu.values, dtype=float)
    lm = literal_mobius(v, mu.n)
    lx = literal_maxplus(v, mu.n)
    return TransformCheck(
        float(np.max(np.abs(lm - mobius(mu).values))),
        float(np.max(np.abs(lx - maxplus(mu).values))),
        lm,
        lx,
    )

