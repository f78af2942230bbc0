"""Linear programs in ``min c.x, x >= 0`` form and a dense two-phase simplex."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import NegativeWeightOnAbs

FEAS_TOL = 1e-9
OPT_TOL = 1e-9
PIVOT_TOL = 1e-9
MAX_PIVOTS = 10**6

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration_limit"

_STATUS = {
    _kernels.OPTIMAL: OPTIMAL,
    _kernels.UNBOUNDED: UNBOUNDED,
    _kernels.ITERATION_LIMIT: ITERATION_LIMIT,
}


@dataclass(frozen=True)
class Constraint:
    coeffs: np.ndarray
    relation: str  # "=" or "<="
    rhs: float

    def __post_init__(self):
        if self.relation not in ("=", "<="):
            raise ValueError(f"relation must be '=' or '<=', got {self.relation!r}")
        if not np.isfinite(self.rhs):
            raise ValueError("constraint right-hand side must be finite")


@dataclass(frozen=True)
class LinearProgram:
    names: tuple
    objective: np.ndarray
    constraints: tuple = ()

    def __post_init__(self):
        names = tuple(self.names)
        obj = np.array(self.objective, dtype=np.float64)
        if obj.shape != (len(names),):
            raise ValueError("objective length must match the variable count")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        cons = []
        for con in self.constraints:
            coeffs = np.array(con.coeffs, dtype=np.float64)
            if coeffs.shape != (len(names),):
                raise ValueError("constraint row length must match the variable count")
            cons.append(Constraint(coeffs, con.relation, float(con.rhs)))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", tuple(cons))

    @classmethod
    def from_arrays(cls, names, objective, A_eq=None, b_eq=None, A_ub=None, b_ub=None):
        cons = []
        if A_eq is not None:
            cons += [Constraint(row, "=", rhs) for row, rhs in zip(np.atleast_2d(A_eq), b_eq)]
        if A_ub is not None:
            cons += [Constraint(row, "<=", rhs) for row, rhs in zip(np.atleast_2d(A_ub), b_ub)]
        return cls(tuple(names), objective, tuple(cons))

    @property
    def num_vars(self) -> int:
        return len(self.names)

    def index(self, name) -> int:
        return self.names.index(name)

    def arrays(self):
        """(A_eq, b_eq, A_ub, b_ub) as dense arrays."""
        nv = self.num_vars
        eq = [c for c in self.constraints if c.relation == "="]
        ub = [c for c in self.constraints if c.relation == "<="]

        def stack(cs):
            if not cs:
                return np.zeros((0, nv)), np.zeros(0)
            return np.vstack([c.coeffs for c in cs]), np.array([c.rhs for c in cs])

        return (*stack(eq), *stack(ub))

    def max_violation(self, x) -> float:
        x = np.asarray(x, dtype=float)
        worst = float(max(0.0, -x.min())) if x.size else 0.0
        for con in self.constraints:
            lhs = float(con.coeffs @ x)
            gap = abs(lhs - con.rhs) if con.relation == "=" else max(0.0, lhs - con.rhs)
            worst = max(worst, gap)
        return worst


@dataclass(frozen=True)
class LPSolution:
    status: str
    x: Optional[np.ndarray] = field(default=None, repr=False)
    objective: float = float("nan")
    iterations: int = 0
    names: tuple = field(default=(), repr=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    def value(self, name) -> float:
        return float(self.x[self.names.index(name)])

    def values(self) -> dict:
        return dict(zip(self.names, self.x.tolist()))


def _standard_form(lp: LinearProgram):
    """Equality form with slacks; rows flipped so that every rhs >= 0.

    Returns A, b, c and, per row, the column that can start in the basis
    (a slack with coefficient +1) or -1 when an artificial is needed.
    """
    A_eq, b_eq, A_ub, b_ub = lp.arrays()
    n, n_eq, n_ub = lp.num_vars, len(b_eq), len(b_ub)
    A = np.zeros((n_eq + n_ub, n + n_ub))
    A[:n_eq, :n] = A_eq
    A[n_eq:, :n] = A_ub
    A[n_eq:, n:] = np.eye(n_ub)
    b = np.concatenate([b_eq, b_ub])
    start = np.full(n_eq + n_ub, -1, dtype=np.int64)
    start[n_eq:] = n + np.arange(n_ub)
    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1
    start[flip] = -1
    c = np.concatenate([lp.objective, np.zeros(n_ub)])
    return A, b, c, start


def solve(lp: LinearProgram, max_iter: int = MAX_PIVOTS) -> LPSolution:
    """Two-phase dense primal simplex with Bland's rule.

    Deterministic: entering column is the lowest index with negative reduced
    cost, leaving row is the min-ratio row with the lowest basic index.
    """
    A, b, c, start = _standard_form(lp)
    m, N = A.shape
    simplex = _kernels.simplex

    need_art = np.flatnonzero(start < 0)
    n_art = need_art.size
    T = np.zeros((m + 1, N + n_art + 1))
    T[:m, :N] = A
    T[:m, -1] = b
    basis = start.copy()
    for k, row in enumerate(need_art):
        T[row, N + k] = 1.0
        basis[row] = N + k

    iterations = 0
    if n_art:
        # phase 1: minimize the sum of artificials
        T[m, :N] = -A[need_art].sum(axis=0)
        T[m, -1] = -b[need_art].sum()
        code, it = simplex(T, basis, N + n_art, max_iter, OPT_TOL)
        iterations += it
        if code == _kernels.ITERATION_LIMIT:
            return LPSolution(ITERATION_LIMIT, iterations=iterations, names=lp.names)
        if -T[m, -1] > FEAS_TOL * max(1.0, float(b.sum())):
            return LPSolution(INFEASIBLE, iterations=iterations, names=lp.names)

        # pivot remaining artificials out; rows with no usable column are redundant
        keep = np.ones(m, dtype=bool)
        for r in range(m):
            if basis[r] < N:
                continue
            cols = np.flatnonzero(np.abs(T[r, :N]) > PIVOT_TOL)
            if cols.size == 0:
                keep[r] = False
                continue
            j = cols[0]
            T[r] /= T[r, j]
            f = T[:, j].copy()
            f[r] = 0.0
            T -= np.outer(f, T[r])
            T[:, j] = 0.0
            T[r, j] = 1.0
            basis[r] = j
        rows = np.flatnonzero(keep)
        T = np.vstack([T[rows][:, np.r_[0:N, -1]], np.zeros((1, N + 1))])
        basis = basis[rows].copy()
        m = rows.size
    else:
        T = T[:, np.r_[0:N, -1]].copy()

    # phase 2
    T[m, :N] = c
    T[m, -1] = 0.0
    for r in range(m):
        if c[basis[r]] != 0.0:
            T[m] -= c[basis[r]] * T[r]
    T = np.ascontiguousarray(T)
    code, it = simplex(T, basis, N, max(max_iter - iterations, 0), OPT_TOL)
    iterations += it
    status = _STATUS[code]
    if status != OPTIMAL:
        return LPSolution(status, iterations=iterations, names=lp.names)

    x = np.zeros(N)
    x[basis] = T[:m, -1]
    x[np.abs(x) <= FEAS_TOL] = 0.0
    x = x[: lp.num_vars]
    return LPSolution(OPTIMAL, x, float(lp.objective @ x), iterations, lp.names)


# -- absolute-value objectives ------------------------------------------------

def pos_name(t):
    return f"{t}+"


def neg_name(t):
    return f"{t}-"


def abs_name(t):
    return f"|{t}|"


def rewrite_absolute(lp: LinearProgram, abs_vars: Iterable) -> LinearProgram:
    """Linearize ``min sum w_t |t|`` over free variables t.

    ``lp.objective[t]`` is read as the weight on |t|. Each t becomes
    ``t+ - t-`` with both parts nonnegative, |t| becomes a new variable
    ``|t|`` carrying the weight, and two rows ``t <= |t|`` and ``-t <= |t|``
    are appended.
    """
    abs_vars = list(abs_vars)
    idx = [lp.index(t) for t in abs_vars]
    w = lp.objective[idx]
    if np.any(w < 0):
        bad = abs_vars[int(np.flatnonzero(w < 0)[0])]
        raise NegativeWeightOnAbs(f"weight on |{bad}| is negative")

    free = set(idx)
    names, cols = [], []
    for j, name in enumerate(lp.names):
        if j in free:
            names += [pos_name(name), neg_name(name)]
            cols += [(j, 1.0), (j, -1.0)]
        else:
            names.append(name)
            cols.append((j, 1.0))
    names += [abs_name(t) for t in abs_vars]
    nv = len(names)
    n_base = len(cols)

    obj = np.zeros(nv)
    for k, (j, s) in enumerate(cols):
        if j not in free:
            obj[k] = lp.objective[j]
    obj[n_base:] = w

    src = np.array([j for j, _ in cols])
    sign = np.array([s for _, s in cols])
    cons = [Constraint(np.concatenate([con.coeffs[src] * sign, np.zeros(len(abs_vars))]),
                       con.relation, con.rhs) for con in lp.constraints]
    pos_col = {j: names.index(pos_name(lp.names[j])) for j in idx}
    for k, j in enumerate(idx):
        for s in (1.0, -1.0):
            row = np.zeros(nv)
            row[pos_col[j]] = s
            row[pos_col[j] + 1] = -s
            row[n_base + k] = -1.0
            cons.append(Constraint(row, "<=", 0.0))
    return LinearProgram(tuple(names), obj, tuple(cons))


def free_values(sol: LPSolution, abs_vars: Sequence) -> dict:
    """Recover t = t+ - t- from a solution of a rewritten program."""
    return {t: sol.value(pos_name(t)) - sol.value(neg_name(t)) for t in abs_vars}


def to_lp_text(lp: LinearProgram) -> str:
    """Plain-text dump in the common LP file layout."""

    def expr(coeffs):
        terms = []
        for name, a in zip(lp.names, coeffs):
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            coef = "" if mag == 1 else f"{mag:.12g} "
            terms.append(f"{sign} {coef}{_lp_ident(name)}")
        if not terms:
            return "0"
        out = " ".join(terms)
        return out[2:] if out.startswith("+ ") else out

    lines = ["Minimize", f" obj: {expr(lp.objective)}", "Subject To"]
    for k, con in enumerate(lp.constraints):
        rel = "=" if con.relation == "=" else "<="
        lines.append(f" c{k}: {expr(con.coeffs)} {rel} {con.rhs:.12g}")
    lines += ["End", ""]
    return "\n".join(lines)


def _lp_ident(name) -> str:
    s = str(name)
    if len(s) > 2 and s[0] == s[-1] == "|":
        s = "abs_" + s[1:-1]
    for ch, rep in ( ("+", "_p"), ("-", "_m"), (",", "_"), (" ", ""),
                    ("(", ""), (")", ""), ("{", ""), ("}", "")):
        s = s.replace(ch, rep)
    return s if not s[:1].isdigit() else "v" + s
