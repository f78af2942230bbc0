"""Set functions on a finite universe.

Subsets are bitmasks: bit ``i`` set means element ``i`` is in the subset,
so ``0`` is the empty set and ``2**n - 1`` is the whole universe. Every set
function is a dense float array of length ``2**n`` in mask order.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import (
    BoundaryViolation,
    MonotonicityViolation,
    NegativeValue,
    NotAMeasure,
    UniverseTooLarge,
)

TOL = 1e-9
DEFAULT_MAX_N = 6
SET_KINDS = ("mobius", "maxplus", "bpa", "generic")


def max_universe_size() -> int:
    raw = os.environ.get("CAPTRANS_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    return int(raw)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def elements(mask: int) -> list[int]:
    """Indices of the elements of ``mask`` in increasing order."""
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def submasks(mask: int):
    """All subsets of ``mask``, ``mask`` itself first and ``0`` last."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


@dataclass(frozen=True)
class Universe:
    n: int
    labels: Optional[tuple] = None

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise UniverseTooLarge(f"universe size must be a positive integer, got {self.n!r}")
        cap = max_universe_size()
        if self.n > cap:
            raise UniverseTooLarge(
                f"universe of {self.n} elements exceeds the cap of {cap} "
                "(set CAPTRANS_MAX_N to raise it)"
            )
        if self.n > DEFAULT_MAX_N:
            warnings.warn(
                f"universe of {self.n} elements: plans have 4**{self.n} entries",
                RuntimeWarning,
                stacklevel=3,
            )
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"x{i + 1}" for i in range(self.n)))
        else:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n or len(set(labels)) != self.n:
                raise ValueError("labels must be n distinct strings")
            object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def singleton(self, i: int) -> int:
        return 1 << i

    def describe(self, mask: int) -> str:
        if mask == 0:
            return "{}"
        return "{" + ",".join(self.labels[i] for i in elements(mask)) + "}"


def _frozen(values, size: int) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.shape != (size,):
        raise ValueError(f"expected {size} values, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Capacity:
    universe: Universe
    values: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.universe.n

    @property
    def normalized(self) -> bool:
        return abs(self.values[-1] - 1.0) <= TOL

    @property
    def singletons(self) -> np.ndarray:
        return np.array([self.values[1 << i] for i in range(self.n)])

    def __getitem__(self, mask: int) -> float:
        return float(self.values[mask])


@dataclass(frozen=True)
class SetVector:
    universe: Universe
    values: np.ndarray = field(repr=False)
    kind: str = "generic"

    def __post_init__(self):
        if self.kind not in SET_KINDS:
            raise ValueError(f"unknown set-vector kind {self.kind!r}")
        object.__setattr__(self, "values", _frozen(self.values, self.universe.size))

    def __getitem__(self, mask: int) -> float:
        return float(self.values[mask])


def validate_capacity(values: Sequence[float], universe: Universe) -> Capacity:
    v = np.asarray(values, dtype=np.float64)
    if v.shape != (universe.size,):
        raise ValueError(f"expected {universe.size} values for n={universe.n}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("capacity values must be finite")
    if abs(v[0]) > TOL:
        raise BoundaryViolation(f"value on the empty set must be 0, got {v[0]}")
    neg = np.flatnonzero(v < -TOL)
    if neg.size:
        s = int(neg[0])
        raise NegativeValue(f"negative value {v[s]} on {universe.describe(s)}")
    for s in range(universe.size):
        for i in range(universe.n):
            bit = 1 << i
            if not s & bit and v[s] > v[s | bit] + TOL:
                t = s | bit
                raise MonotonicityViolation(
                    s,
                    t,
                    f"monotonicity violated: mu({universe.describe(s)})={v[s]} > "
                    f"mu({universe.describe(t)})={v[t]}",
                )
    v = v.copy()
    v[0] = 0.0
    return Capacity(universe, _frozen(v, universe.size))


def mobius(mu: Capacity) -> SetVector:
    tau = _kernels.subset_sum(np.asarray(mu.values, dtype=np.float64), mu.n, -1.0)
    tau[0] = 0.0
    return SetVector(mu.universe, tau, "mobius")


def mobius_inverse(m: SetVector) -> Capacity:
    """Rebuild the capacity whose Moebius transform is ``m``.

    Raises NotAMeasure when the cumulative sums are negative or not monotone.
    """
    u = m.universe
    mu = _kernels.subset_sum(np.asarray(m.values, dtype=np.float64), u.n, 1.0)
    if abs(mu[0]) > TOL:
        raise NotAMeasure(f"transform is nonzero on the empty set ({m.values[0]})")
    try:
        return validate_capacity(mu, u)
    except (NegativeValue, MonotonicityViolation) as exc:
        raise NotAMeasure(f"not the Moebius transform of a capacity: {exc}") from exc


def is_belief(mu: Capacity) -> bool:
    m = mobius(mu).values
    return bool(np.all(m >= -TOL) and abs(m.sum() - 1.0) <= TOL)


def bpa(mu: Capacity) -> SetVector:
    """The Moebius transform of a belief function, tagged as a bpa."""
    from .errors import NotBelief

    if not is_belief(mu):
        raise NotBelief("capacity is not a belief function")
    m = np.clip(mobius(mu).values, 0.0, None)
    return SetVector(mu.universe, m, "bpa")


def maxplus(mu: Capacity) -> SetVector:
    tau = _kernels.maxplus_forward(np.asarray(mu.values, dtype=np.float64), mu.n)
    tau[0] = 0.0
    # monotone within TOL, so tiny negatives are rounding
    tau[(tau < 0) & (tau >= -TOL)] = 0.0
    return SetVector(mu.universe, tau, "maxplus")


def maxplus_inverse(m: SetVector) -> Capacity:
    u = m.universe
    vals = np.asarray(m.values, dtype=np.float64).copy()
    vals[0] = 0.0
    mu = _kernels.maxplus_backward(vals, u.n)
    return validate_capacity(mu, u)


def is_additive(mu: Capacity) -> bool:
    single = mu.singletons
    masks = np.arange(mu.universe.size)
    bits = (masks[:, None] >> np.arange(mu.n)) & 1
    return bool(np.all(np.abs(bits @ single - mu.values) <= TOL))


# -- constructors ------------------------------------------------------------

def additive(p: Sequence[float], universe: Optional[Universe] = None) -> Capacity:
    p = np.asarray(p, dtype=np.float64)
    universe = universe or Universe(len(p))
    masks = np.arange(universe.size)
    bits = (masks[:, None] >> np.arange(universe.n)) & 1
    return validate_capacity(bits @ p, universe)


def unanimity(universe: Universe, mask: Optional[int] = None) -> Capacity:
    """1 on every superset of ``mask`` (default: the whole universe), else 0."""
    mask = universe.full if mask is None else mask
    masks = np.arange(universe.size)
    return validate_capacity(((masks & mask) == mask).astype(float), universe)


def threshold(universe: Universe, k: int, within: Optional[int] = None) -> Capacity:
    """1 on sets meeting ``within`` (default: everything) in at least k elements."""
    within = universe.full if within is None else within
    vals = [1.0 if popcount(s & within) >= k else 0.0 for s in range(universe.size)]
    return validate_capacity(vals, universe)
