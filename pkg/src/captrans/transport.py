"""Transport problems between capacities.

Four formulations share one plan type:

* ``classical``: point-to-point coupling of two probability vectors;
* ``bpa``: coupling of two basic probability assignments over nonempty sets;
* ``mobius``: signed coupling of Moebius transforms, cost on |assg|;
* ``maxplus``: nonnegative coupling of (max,+)-transforms where mass may be
  sent to or taken from the empty set (the "lack" of either side).

Plans over subsets are ``2**n x 2**m`` arrays indexed by bitmask; row 0 and
column 0 hold the empty-set entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .cost import CostMatrix, GroundCost
from .errors import (
    InternalSolverError,
    IterationLimit,
    MarginalMismatch,
    NotBelief,
    TotalMassMismatch,
)
from .lp import (
    INFEASIBLE,
    ITERATION_LIMIT,
    OPTIMAL,
    Constraint,
    LinearProgram,
    free_values,
    rewrite_absolute,
    solve,
)
from .setfun import TOL, Capacity, Universe, is_belief, maxplus, mobius

METHODS = ("classical", "bpa", "mobius", "maxplus")


@dataclass(frozen=True)
class TransportPlan:
    x: Universe
    y: Universe
    method: str
    assg: np.ndarray = field(repr=False)
    objective: float = float("nan")
    status: str = OPTIMAL
    iterations: int = 0

    def __post_init__(self):
        a = np.array(self.assg, dtype=np.float64)
        a[np.abs(a) < TOL] = 0.0
        a.setflags(write=False)
        object.__setattr__(self, "assg", a)

    @property
    def lack_mu(self) -> np.ndarray:
        """Mass of each subset of X sent to the empty set."""
        return self.assg[:, 0]

    @property
    def lack_nu(self) -> np.ndarray:
        """Mass of each subset of Y taken from the empty set."""
        return self.assg[0, :]

    def cost(self, c) -> float:
        v = np.asarray(getattr(c, "values", c), dtype=float)
        if self.method == "mobius":
            return float((v * np.abs(self.assg)).sum())
        return float((v * self.assg).sum())


# -- LP builders ----------------------------------------------------------------

def _coupling_lp(rows, cols, row_marg, col_marg, cost, fix_empty=False):
    """Variables x[A, B] for A in rows, B in cols; one equality per nonempty
    row/column fixing its sum; optionally x[0, 0] = 0."""
    rows, cols = list(rows), list(cols)
    names = tuple((a, b) for a in rows for b in cols)
    nr, nc = len(rows), len(cols)
    obj = np.array([cost[a, b] for a, b in names])
    cons = []
    for i, a in enumerate(rows):
        if a == 0:
            continue
        coef = np.zeros(nr * nc)
        coef[i * nc:(i + 1) * nc] = 1.0
        cons.append(Constraint(coef, "=", float(row_marg[a])))
    for j, b in enumerate(cols):
        if b == 0:
            continue
        coef = np.zeros(nr * nc)
        coef[j::nc] = 1.0
        cons.append(Constraint(coef, "=", float(col_marg[b])))
    if fix_empty:
        coef = np.zeros(nr * nc)
        coef[names.index((0, 0))] = 1.0
        cons.append(Constraint(coef, "=", 0.0))
    return LinearProgram(names, obj, tuple(cons))


def classical_lp(p, q, c: GroundCost) -> LinearProgram:
    n, m = c.values.shape
    names = tuple((i, j) for i in range(n) for j in range(m))
    obj = c.values.ravel()
    cons = []
    for i in range(n):
        coef = np.zeros(n * m)
        coef[i * m:(i + 1) * m] = 1.0
        cons.append(Constraint(coef, "=", float(p[i])))
    for j in range(m):
        coef = np.zeros(n * m)
        coef[j::m] = 1.0
        cons.append(Constraint(coef, "=", float(q[j])))
    return LinearProgram(names, obj, tuple(cons))


def bpa_lp(mu: Capacity, nu: Capacity, c_b: CostMatrix) -> LinearProgram:
    return _coupling_lp(range(1, mu.universe.size), range(1, nu.universe.size),
                        mobius(mu).values, mobius(nu).values, c_b.values)


def mobius_lp(mu: Capacity, nu: Capacity, c_m: CostMatrix) -> LinearProgram:
    """Same layout as ``bpa_lp``; the variables are meant to be free and
    the objective weights apply to their absolute values."""
    return bpa_lp(mu, nu, c_m)


def maxplus_lp(mu: Capacity, nu: Capacity, c_a: CostMatrix, allow_lack: bool = True) -> LinearProgram:
    """(max,+) transport program. Without ``allow_lack`` the empty-set rows
    and columns are dropped, which is infeasible whenever the transforms
    carry different total mass."""
    tm, tn = maxplus(mu).values, maxplus(nu).values
    start = 0 if allow_lack else 1
    return _coupling_lp(range(start, mu.universe.size), range(start, nu.universe.size),
                        tm, tn, c_a.values, fix_empty=allow_lack)


def _plan_from(values, shape, names):
    assg = np.zeros(shape)
    for (a, b), v in zip(names, values):
        assg[a, b] = v
    return assg


def _finish(lp, sol, x, y, method, shape, values=None):
    if sol.status == ITERATION_LIMIT:
        raise IterationLimit(f"{method} transport hit the pivot limit after {sol.iterations} pivots")
    if sol.status != OPTIMAL:
        return TransportPlan(x, y, method, np.zeros(shape), float("nan"), sol.status, sol.iterations)
    vals = sol.x if values is None else values
    assg = _plan_from(vals, shape, lp.names)
    return TransportPlan(x, y, method, assg, sol.objective, OPTIMAL, sol.iterations)


# -- solvers --------------------------------------------------------------------

def solve_classical(p, q, c: GroundCost) -> TransportPlan:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != (c.x.n,) or q.shape != (c.y.n,):
        raise ValueError("marginal lengths must match the ground cost")
    if np.any(p < -TOL) or np.any(q < -TOL):
        raise MarginalMismatch("marginals must be nonnegative")
    if abs(p.sum() - q.sum()) > TOL:
        raise MarginalMismatch(f"marginal totals differ: {p.sum()} vs {q.sum()}")
    lp = classical_lp(p, q, c)
    sol = solve(lp)
    return _finish(lp, sol, c.x, c.y, "classical", (c.x.n, c.y.n))


def solve_bpa(mu: Capacity, nu: Capacity, c_b: CostMatrix) -> TransportPlan:
    for name, cap in (("mu", mu), ("nu", nu)):
        if not is_belief(cap):
            raise NotBelief(f"{name} is not a belief function")
    lp = bpa_lp(mu, nu, c_b)
    sol = solve(lp)
    return _finish(lp, sol, mu.universe, nu.universe, "bpa", c_b.values.shape)


def solve_mobius(mu: Capacity, nu: Capacity, c_m: CostMatrix) -> TransportPlan:
    if abs(mu.values[-1] - nu.values[-1]) > TOL:
        raise TotalMassMismatch(
            f"Moebius marginals carry different total mass ({mu.values[-1]} vs {nu.values[-1]})"
        )
    base = mobius_lp(mu, nu, c_m)
    lp = rewrite_absolute(base, base.names)
    sol = solve(lp)
    values = None
    if sol.status == OPTIMAL:
        free = free_values(sol, base.names)
        values = np.array([free[t] for t in base.names])
    plan = _finish(base, sol, mu.universe, nu.universe, "mobius", c_m.values.shape, values)
    if plan.status == OPTIMAL:
        plan = TransportPlan(plan.x, plan.y, "mobius", plan.assg, plan.cost(c_m), OPTIMAL, plan.iterations)
    return plan


def solve_maxplus(mu: Capacity, nu: Capacity, c_a: CostMatrix) -> TransportPlan:
    lp = maxplus_lp(mu, nu, c_a)
    sol = solve(lp)
    if sol.status == INFEASIBLE:
        raise InternalSolverError("(max,+) transport reported infeasible; the all-lack plan is always feasible")
    return _finish(lp, sol, mu.universe, nu.universe, "maxplus", c_a.values.shape)


def discrepancy(mu: Capacity, nu: Capacity, c_a: CostMatrix) -> float:
    """Minimal (max,+) transport cost between mu and nu under c_a."""
    plan = solve_maxplus(mu, nu, c_a)
    if plan.status != OPTIMAL:
        raise InternalSolverError(f"(max,+) transport ended with status {plan.status}")
    return plan.objective


def refinement_gap(mu: Capacity, nu: Capacity, c_a: CostMatrix, c: GroundCost):
    """How much the (max,+) optimum rises when the plan must refine a
    classical optimal plan between the singleton values of mu and nu.

    The extra constraints make the singleton block a coupling of p and q
    whose ground cost does not exceed the classical optimum. A gap of 0
    (within tolerance) means some optimal plan ``assg`` and some optimal
    point plan ``a`` satisfy ``a`` refines ``assg``. Returns the gap and
    the constrained plan (None if the constrained program is infeasible).
    """
    p, q = mu.singletons, nu.singletons
    w = solve_classical(p, q, c).objective
    free = solve_maxplus(mu, nu, c_a)
    lp = maxplus_lp(mu, nu, c_a)
    n, m = mu.n, nu.n
    index = {name: k for k, name in enumerate(lp.names)}
    extra = []
    for i in range(n):
        row = np.zeros(lp.num_vars)
        for j in range(m):
            row[index[1 << i, 1 << j]] = 1.0
        extra.append(Constraint(row, "=", float(p[i])))
    for j in range(m):
        row = np.zeros(lp.num_vars)
        for i in range(n):
            row[index[1 << i, 1 << j]] = 1.0
        extra.append(Constraint(row, "=", float(q[j])))
    row = np.zeros(lp.num_vars)
    for i in range(n):
        for j in range(m):
            row[index[1 << i, 1 << j]] = c.values[i, j]
    extra.append(Constraint(row, "<=", w + TOL))
    tied = LinearProgram(lp.names, lp.objective, lp.constraints + tuple(extra))
    sol = solve(tied)
    if sol.status != OPTIMAL:
        return float("inf"), None
    plan = _finish(tied, sol, mu.universe, nu.universe, "maxplus", c_a.values.shape)
    return plan.objective - free.objective, plan


def transport(mu: Capacity, nu: Capacity, method: str, cost) -> TransportPlan:
    if method == "bpa":
        return solve_bpa(mu, nu, cost)
    if method == "mobius":
        return solve_mobius(mu, nu, cost)
    if method == "maxplus":
        return solve_maxplus(mu, nu, cost)
    if method == "classical":
        return solve_classical(mu.singletons, nu.singletons, cost)
    raise ValueError(f"unknown method {method!r}")


# -- validation -----------------------------------------------------------------

@dataclass(frozen=True)
class PlanReport:
    method: str
    transform_violation: float
    cumulative_violation: float
    sign_violation: float
    messages: tuple = ()

    @property
    def max_violation(self) -> float:
        return max(self.transform_violation, self.cumulative_violation, self.sign_violation)

    @property
    def marginals_ok(self) -> bool:
        return max(self.transform_violation, self.cumulative_violation) <= TOL

    @property
    def agree(self) -> bool:
        """Both marginal checks reach the same verdict."""
        return (self.transform_violation <= TOL) == (self.cumulative_violation <= TOL)

    @property
    def ok(self) -> bool:
        return self.max_violation <= TOL


def _zeta(v, n):
    return _kernels.subset_sum(np.asarray(v, dtype=np.float64), n, 1.0)


def validate_plan(plan: TransportPlan, mu: Capacity, nu: Capacity) -> PlanReport:
    """Check a plan's marginals against mu and nu in two independent ways.

    The transform check compares row/column sums with the transform of each
    measure. The cumulative check rebuilds each measure from the row/column
    sums (subset sums for bpa/mobius, the (max,+) recursion for maxplus, the
    additive extension for classical) and compares with the measure itself.
    """
    a = np.asarray(plan.assg, dtype=float)
    method = plan.method
    n, m = mu.n, nu.n
    msgs = []
    rows, cols = a.sum(axis=1), a.sum(axis=0)

    if method == "classical":
        if a.shape != (n, m):
            raise ValueError(f"classical plan must be {n}x{m}")
        t_mu, t_nu = mu.singletons, nu.singletons
        bits_x = (np.arange(1 << n)[:, None] >> np.arange(n)) & 1
        bits_y = (np.arange(1 << m)[:, None] >> np.arange(m)) & 1
        rebuilt_mu, rebuilt_nu = bits_x @ rows, bits_y @ cols
        sign = float(max(0.0, -a.min()))
        row_err = np.abs(rows - t_mu)
        col_err = np.abs(cols - t_nu)
    else:
        if a.shape != (mu.universe.size, nu.universe.size):
            raise ValueError(f"plan must be {mu.universe.size}x{nu.universe.size}")
        if method in ("bpa", "mobius"):
            t_mu, t_nu = mobius(mu).values, mobius(nu).values
            rebuilt_mu, rebuilt_nu = _zeta(rows, n), _zeta(cols, m)
            empty = float(max(np.abs(a[0]).max(), np.abs(a[:, 0]).max()))
            sign = empty
            if empty > TOL:
                msgs.append(f"empty-set entries must be 0 for {method} plans (found {empty})")
            if method == "bpa":
                neg = float(max(0.0, -a.min()))
                if neg > TOL:
                    msgs.append(f"negative mass {-neg} in a bpa plan")
                sign = max(sign, neg)
        elif method == "maxplus":
            t_mu, t_nu = maxplus(mu).values, maxplus(nu).values
            r, c = rows.copy(), cols.copy()
            r[0] = c[0] = 0.0
            rebuilt_mu = _kernels.maxplus_backward(r, n)
            rebuilt_nu = _kernels.maxplus_backward(c, m)
            neg = float(max(0.0, -a.min()))
            if neg > TOL:
                i, j = np.unravel_index(np.argmin(a), a.shape)
                where = "lack entry" if 0 in (i, j) else "assignment"
                msgs.append(
                    f"negative {where} {a[i, j]} at ({mu.universe.describe(int(i))}, "
                    f"{nu.universe.describe(int(j))})"
                )
            sign = max(neg, abs(float(a[0, 0])))
            if abs(a[0, 0]) > TOL:
                msgs.append("assg(empty, empty) must be 0")
        else:
            raise ValueError(f"unknown method {method!r}")
        row_err = np.abs(rows - t_mu)[1:]
        col_err = np.abs(cols - t_nu)[1:]

    transform = float(max(row_err.max(initial=0.0), col_err.max(initial=0.0)))
    cumulative = float(max(np.abs(rebuilt_mu - mu.values).max(), np.abs(rebuilt_nu - nu.values).max()))
    if transform > TOL:
        msgs.append(f"transform marginals off by up to {transform:.3g}")
    if cumulative > TOL:
        msgs.append(f"measure reconstruction off by up to {cumulative:.3g}")
    return PlanReport(method, transform, cumulative, sign, tuple(msgs))
