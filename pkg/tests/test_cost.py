import numpy as np
import pytest

from captrans import catalog
from captrans.cost import (
    CostMatrix,
    GroundCost,
    ground_absdiff,
    lift_equalized,
    lift_kappa,
    lift_tiered,
    no_dump_violation,
    rank_positions,
    refines,
    singleton_block,
    subset_argmin,
)
from captrans.errors import KappaOrderViolation, KappaTooSmall
from captrans.setfun import Universe, popcount

U3 = Universe(3)
C3 = ground_absdiff(U3)


def test_absdiff_defaults_to_indices():
    np.testing.assert_array_equal(C3.values, [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert ground_absdiff(U3, x_positions=[0, 0.5, 3]).values[2, 1] == 2.5


def test_cost_values_must_be_nonnegative():
    with pytest.raises(ValueError):
        GroundCost(Universe(1), Universe(1), [[-1.0]])
    with pytest.raises(ValueError):
        CostMatrix(Universe(1), Universe(1), [[0, np.inf], [0, 0]])


class TestKappa:
    def test_default_mode(self):
        c = lift_kappa(C3, 3)
        assert c[1, 4] == 2 and c[2, 2] == 0
        assert c[1, 3] == 3 and c[3, 1] == 3  # singleton vs pair
        assert c[1, 0] == 3 and c[0, 4] == 3  # singleton vs empty set
        assert c[3, 5] == 0 and c[7, 0] == 0 and c[0, 0] == 0

    def test_bpa_mode(self):
        c = lift_kappa(C3, 3, bpa_mode=True)
        assert c[3, 3] == 3 and c[7, 7] == 3 and c[0, 5] == 3
        assert c[4, 1] == 2

    def test_default_kappa(self):
        assert lift_kappa(C3)[1, 3] == 3.0

    @pytest.mark.parametrize("kappa", [2, 1.5, 0])
    def test_too_small(self, kappa):
        with pytest.raises(KappaTooSmall):
            lift_kappa(C3, kappa)

    def test_symmetric(self):
        assert lift_kappa(C3).is_symmetric()


class TestTiered:
    def test_levels(self):
        c = lift_tiered(C3, 3, 4)
        assert c[1, 2] == 1 and c[1, 3] == 3 and c[6, 4] == 3
        assert c[1, 0] == 4 and c[0, 7] == 4 and c[7, 0] == 4
        assert c[3, 6] == 0 and c[0, 0] == 0

    def test_order(self):
        with pytest.raises(KappaOrderViolation):
            lift_tiered(C3, 3, 3)
        with pytest.raises(KappaTooSmall):
            lift_tiered(C3, 2, 5)

    def test_no_dump(self):
        assert no_dump_violation(lift_tiered(C3)) <= 0

    def test_violation_measures_cheap_empty_set(self):
        assert no_dump_violation(lift_kappa(C3, 3)) == 0
        v = np.full((8, 8), 5.0)
        v[0, :] = v[:, 0] = 1.0
        v[0, 0] = 0
        assert no_dump_violation(CostMatrix(U3, U3, v)) == pytest.approx(3.0)


class TestEqualized:
    def test_ranks_stable(self):
        np.testing.assert_array_equal(rank_positions([0.3, 0.1, 0.3]), [2, 1, 3])

    def test_argmin(self):
        arg = subset_argmin([0.2, 0.3, 0.5], U3)
        assert list(arg) == [-1, 0, 1, 0, 2, 0, 1, 0]

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_subset_count_identity(self, n):
        rng = np.random.default_rng(n)
        u = Universe(n)
        for p in (rng.random(n), np.ones(n)):
            ranks, arg = rank_positions(p), subset_argmin(p, u)
            for k in range(1, n + 1):
                assert sum(ranks[arg[s]] == k for s in range(1, u.size)) == 2 ** (n - k)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_weights_sum_to_ground_cost(self, n):
        """Over all nonempty pairs sharing an argmin pair the weights total c."""
        rng = np.random.default_rng(7 + n)
        u = Universe(n)
        c = GroundCost(u, u, rng.random((n, n)))
        from captrans.sampling import random_additive

        mu, nu = random_additive(u, rng), random_additive(u, rng)
        ce = lift_equalized(c, mu, nu)
        ax, ay = subset_argmin(mu.singletons, u), subset_argmin(nu.singletons, u)
        totals = np.zeros((n, n))
        for a in range(1, u.size):
            for b in range(1, u.size):
                totals[ax[a], ay[b]] += ce[a, b]
        np.testing.assert_allclose(totals, c.values, atol=1e-12)

    def test_additive_pair_values(self):
        mu, nu = catalog.additive_pair()
        ce = lift_equalized(C3, mu, nu)
        assert ce[1, 1] == 0
        # x3 tops p (weight 1); y1 is first in q (weight 1/4); c = 2
        assert ce[4, 1] == pytest.approx(0.5) and ce[1, 4] == pytest.approx(0.5)
        assert ce[7, 7] == 0 and ce[4, 2] == pytest.approx(0.5)
        assert ce[0, 3] == 3 and ce[5, 0] == 3 and ce[0, 0] == 0

    def test_kappa_checked(self):
        mu, nu = catalog.additive_pair()
        with pytest.raises(KappaTooSmall):
            lift_equalized(C3, mu, nu, 1)


def test_refines_and_block():
    assg = catalog.additive_pair_plan()
    a = singleton_block(assg)
    np.testing.assert_allclose(a, [[0.2, 0, 0], [0, 0.2, 0.1], [0, 0, 0.5]])
    assert refines(a, assg)
    b = a.copy()
    b[0, 0] += 1e-6
    assert not refines(b, assg)
    with pytest.raises(ValueError):
        refines(np.zeros((2, 2)), assg)


def test_popcount_classes_cover_lift():
    c = lift_kappa(C3, 3)
    for a in range(8):
        for b in range(8):
            crossing = (popcount(a) == 1) != (popcount(b) == 1)
            assert (c[a, b] == 3) == crossing
