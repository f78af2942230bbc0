"""Ground costs and their liftings to pairs of subsets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import KappaOrderViolation, KappaTooSmall
from .setfun import TOL, Capacity, Universe, popcount


@dataclass(frozen=True)
class GroundCost:
    x: Universe
    y: Universe
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.shape != (self.x.n, self.y.n):
            raise ValueError(f"ground cost must be {self.x.n}x{self.y.n}, got {v.shape}")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("ground cost entries must be finite and nonnegative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def max(self) -> float:
        return float(self.values.max())


@dataclass(frozen=True)
class CostMatrix:
    """Costs on subset pairs; row/column 0 is the empty set."""

    x: Universe
    y: Universe
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.shape != (self.x.size, self.y.size):
            raise ValueError(f"cost matrix must be {self.x.size}x{self.y.size}, got {v.shape}")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("cost entries must be finite and nonnegative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __getitem__(self, pair):
        return float(self.values[pair])

    def is_symmetric(self) -> bool:
        return self.x == self.y and bool(np.array_equal(self.values, self.values.T))


def ground_absdiff(
    x: Universe,
    y: Optional[Universe] = None,
    x_positions: Optional[Sequence[float]] = None,
    y_positions: Optional[Sequence[float]] = None,
) -> GroundCost:
    """c(x_i, y_j) = |pos_i - pos_j|; positions default to element indices."""
    y = x if y is None else y
    px = np.arange(x.n, dtype=float) if x_positions is None else np.asarray(x_positions, float)
    if y_positions is None:
        py = px if (y is x and x_positions is not None) else np.arange(y.n, dtype=float)
    else:
        py = np.asarray(y_positions, float)
    return GroundCost(x, y, np.abs(px[:, None] - py[None, :]))


def default_kappa(c: GroundCost) -> float:
    return c.max + 1.0


def _check_kappa(c: GroundCost, kappa: float) -> None:
    if not kappa > c.max:
        raise KappaTooSmall(f"kappa={kappa} must exceed the largest ground cost {c.max}")


def _classes(u: Universe) -> np.ndarray:
    """0 for the empty set, 1 for singletons, 2 for larger sets."""
    return np.array([min(popcount(s), 2) for s in range(u.size)])


def _singleton_block(c: GroundCost, out: np.ndarray) -> None:
    for i in range(c.x.n):
        for j in range(c.y.n):
            out[1 << i, 1 << j] = c.values[i, j]


def lift_kappa(c: GroundCost, kappa: Optional[float] = None, bpa_mode: bool = False) -> CostMatrix:
    """Copy c on singleton pairs and charge kappa for crossing blocks.

    Default mode: a singleton paired with anything that is not a singleton
    (the empty set included) costs kappa; every other pair costs 0. With
    ``bpa_mode`` every pair that is not singleton-singleton costs kappa.
    """
    kappa = default_kappa(c) if kappa is None else float(kappa)
    _check_kappa(c, kappa)
    cx, cy = _classes(c.x), _classes(c.y)
    sx, sy = (cx == 1)[:, None], (cy == 1)[None, :]
    if bpa_mode:
        out = np.full((c.x.size, c.y.size), kappa)
    else:
        out = np.where(sx ^ sy, kappa, 0.0)
    _singleton_block(c, out)
    return CostMatrix(c.x, c.y, out)


def lift_tiered(
    c: GroundCost, kappa: Optional[float] = None, kappa_plus: Optional[float] = None
) -> CostMatrix:
    """Three-level lifting that makes dumping mass on the empty set expensive.

    singleton-singleton = c, singleton-larger set = kappa, anything nonempty
    paired with the empty set = kappa_plus, larger-larger = 0, empty-empty = 0.
    """
    kappa = default_kappa(c) if kappa is None else float(kappa)
    kappa_plus = kappa + 1.0 if kappa_plus is None else float(kappa_plus)
    if not kappa > c.max:
        raise KappaOrderViolation(f"kappa={kappa} must exceed the largest ground cost {c.max}")
    if not kappa_plus > kappa:
        raise KappaOrderViolation(f"kappa_plus={kappa_plus} must exceed kappa={kappa}")
    cx, cy = _classes(c.x)[:, None], _classes(c.y)[None, :]
    out = np.zeros((c.x.size, c.y.size))
    out[((cx == 1) & (cy == 2)) | ((cx == 2) & (cy == 1))] = kappa
    out[(cx == 0) ^ (cy == 0)] = kappa_plus
    _singleton_block(c, out)
    cm = CostMatrix(c.x, c.y, out)
    assert no_dump_violation(cm) <= 0.0
    return cm


def no_dump_violation(c_a: CostMatrix) -> float:
    """max over (A, B) of c(A, B) - c(A, {}) - c({}, B); <= 0 means no gain
    from routing a direct assignment through the empty set."""
    v = c_a.values
    gap = v[1:, 1:] - v[1:, :1] - v[:1, 1:]
    return float(gap.max()) if gap.size else 0.0


def rank_positions(p: Sequence[float]) -> np.ndarray:
    """1-based rank of each element under a stable ascending sort of p."""
    order = np.argsort(np.asarray(p, dtype=float), kind="stable")
    ranks = np.empty(len(order), dtype=np.int64)
    ranks[order] = np.arange(1, len(order) + 1)
    return ranks


def subset_argmin(p: Sequence[float], universe: Universe) -> np.ndarray:
    """Element of smallest rank in each nonempty subset (-1 for the empty set).

    Ties go to the smaller element index, matching ``rank_positions``.
    """
    ranks = rank_positions(p)
    out = np.full(universe.size, -1, dtype=np.int64)
    for s in range(1, universe.size):
        best = -1
        for i in range(universe.n):
            if s >> i & 1 and (best < 0 or ranks[i] < ranks[best]):
                best = i
        out[s] = best
    return out


def lift_equalized(
    c: GroundCost, mu: Capacity, nu: Capacity, kappa: Optional[float] = None
) -> CostMatrix:
    """Spread c over subset pairs so each singleton pair keeps its total weight.

    A nonempty pair (A, B) inherits c(x_i, y_j) for the p-argmin x_i of A and
    the q-argmin y_j of B, divided by how many subsets share that argmin
    (2**(n - rank)). Pairs with exactly one empty side cost kappa.
    """
    kappa = default_kappa(c) if kappa is None else float(kappa)
    _check_kappa(c, kappa)
    n, m = c.x.n, c.y.n
    p, q = mu.singletons, nu.singletons
    rx, ry = rank_positions(p), rank_positions(q)
    ax, ay = subset_argmin(p, c.x), subset_argmin(q, c.y)
    wx = 1.0 / 2.0 ** (n - rx)
    wy = 1.0 / 2.0 ** (m - ry)
    out = np.empty((c.x.size, c.y.size))
    ix, iy = ax[1:], ay[1:]
    out[1:, 1:] = (wx[ix][:, None] * wy[iy][None, :]) * c.values[np.ix_(ix, iy)]
    out[0, :] = kappa
    out[:, 0] = kappa
    out[0, 0] = 0.0
    return CostMatrix(c.x, c.y, out)


def refines(a, assg, tol: float = TOL) -> bool:
    """True when the point plan ``a`` matches ``assg`` on every singleton pair."""
    a = np.asarray(a, dtype=float)
    full = np.asarray(getattr(assg, "assg", assg), dtype=float)
    n, m = a.shape
    if full.shape != (1 << n, 1 << m):
        raise ValueError(f"plan shapes {a.shape} and {full.shape} are incompatible")
    rows = 1 << np.arange(n)
    cols = 1 << np.arange(m)
    return bool(np.all(np.abs(full[np.ix_(rows, cols)] - a) <= tol))


def singleton_block(assg) -> np.ndarray:
    """Restriction of a subset-pair plan to singleton pairs, as an n x m array."""
    full = np.asarray(getattr(assg, "assg", assg), dtype=float)
    n = full.shape[0].bit_length() - 1
    m = full.shape[1].bit_length() - 1
    return full[np.ix_(1 << np.arange(n), 1 << np.arange(m))]
