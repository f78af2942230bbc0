from math import comb

import numpy as np
import pytest

from captrans import catalog
from captrans.cost import ground_absdiff
from captrans.errors import InfeasibleEverywhere, TooLarge, UnboundedOracle
from captrans.lp import LinearProgram
from captrans.oracle import (
    MAX_VARS,
    direct_transform_check,
    enumerate_optimum,
    enumerate_vertices,
    literal_maxplus,
)
from captrans.sampling import random_capacity
from captrans.setfun import Universe, validate_capacity
from captrans.transport import classical_lp, maxplus_lp

U2 = Universe(2)


def classical(p, q):
    u = Universe(len(p))
    return classical_lp(p, q, ground_absdiff(u))


@pytest.mark.parametrize("p, q, want", [
    ([0.5, 0.5], [0.5, 0.5], 0.0),
    ([1, 0], [0, 1], 1.0),
    ([0.2, 0.3, 0.5], [0.2, 0.2, 0.6], 0.1),
])
def test_classical_optima(p, q, want):
    obj, x = enumerate_optimum(classical(p, q))
    assert obj == pytest.approx(want, abs=1e-12)
    assert classical(p, q).max_violation(x) <= 1e-9


def test_basis_count_is_exhaustive():
    lp = classical([0.2, 0.3, 0.5], [0.2, 0.2, 0.6])
    res = enumerate_vertices(lp)
    assert res.rank == 5  # one redundant marginal row
    assert res.bases_examined == comb(9, 5)
    for x, _ in res.vertices:
        assert lp.max_violation(x) <= 1e-9


def test_largest_supported_instance():
    rng = np.random.default_rng(1)
    mu, nu = random_capacity(U2, rng), random_capacity(U2, rng)
    from captrans.cost import lift_tiered

    lp = maxplus_lp(mu, nu, lift_tiered(ground_absdiff(U2)))
    assert lp.num_vars == 16 and len(lp.constraints) == 7
    res = enumerate_vertices(lp)
    assert res.bases_examined == comb(16, res.rank)


def test_too_large():
    lp = LinearProgram(tuple(range(MAX_VARS + 1)), np.zeros(MAX_VARS + 1))
    with pytest.raises(TooLarge):
        enumerate_vertices(lp)


def test_inconsistent_and_empty():
    lp = LinearProgram.from_arrays(["x"], [1], A_eq=[[1.0], [1.0]], b_eq=[1, 2])
    with pytest.raises(InfeasibleEverywhere):
        enumerate_optimum(lp)
    neg = LinearProgram.from_arrays(["x"], [1], A_eq=[[1.0]], b_eq=[-1])
    with pytest.raises(InfeasibleEverywhere):
        enumerate_optimum(neg)


def test_unbounded_ray():
    lp = LinearProgram.from_arrays(["x", "y"], [-1, 0], A_eq=[[1.0, -1.0]], b_eq=[0])
    with pytest.raises(UnboundedOracle):
        enumerate_optimum(lp)


class TestTransformCheck:
    def test_additive_pair_exact(self):
        assert direct_transform_check(catalog.additive_pair()[0]).max_diff == 0

    def test_random_n4(self):
        mu = random_capacity(Universe(4), np.random.default_rng(4))
        assert direct_transform_check(mu).max_diff <= 1e-12

    def test_null(self):
        rep = direct_transform_check(validate_capacity(np.zeros(8), Universe(3)))
        assert not rep.mobius_values.any() and not rep.maxplus_values.any()

    def test_literal_maxplus_by_hand(self):
        np.testing.assert_allclose(literal_maxplus([0, 0.3, 0.5, 0.6], 2), [0, 0.3, 0.5, 0.1])
