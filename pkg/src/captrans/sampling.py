"""Seeded random capacities for tests and benchmarks."""

import numpy as np

from .setfun import Capacity, SetVector, Universe, additive, maxplus_inverse, validate_capacity
from . import _kernels


def random_additive(universe: Universe, rng) -> Capacity:
    return additive(rng.dirichlet(np.ones(universe.n)), universe)


def random_capacity(universe: Universe, rng, density: float = 0.6) -> Capacity:
    """Normalized capacity built from a sparse random (max,+)-transform."""
    m = rng.random(universe.size) * (rng.random(universe.size) < density)
    m[0] = 0.0
    m[universe.full] += 1e-3
    mu = maxplus_inverse(SetVector(universe, m, "maxplus")).values
    return validate_capacity(mu / mu[-1], universe)


def random_belief(universe: Universe, rng, density: float = 0.5) -> Capacity:
    """Belief function from a random bpa over a random family of focal sets."""
    w = rng.random(universe.size) * (rng.random(universe.size) < density)
    w[0] = 0.0
    if w.sum() == 0.0:
        w[universe.full] = 1.0
    w /= w.sum()
    return validate_capacity(_kernels.subset_sum(w, universe.n, 1.0), universe)
