import numpy as np
import pytest
from hypothesis import given, settings

from captrans import catalog
from captrans.errors import (
    BoundaryViolation,
    MonotonicityViolation,
    NegativeValue,
    NotAMeasure,
    UniverseTooLarge,
)
from captrans.oracle import literal_mobius
from captrans.setfun import (
    SetVector,
    Universe,
    additive,
    is_additive,
    is_belief,
    maxplus,
    maxplus_inverse,
    mobius,
    mobius_inverse,
    popcount,
    threshold,
    unanimity,
    validate_capacity,
)

from .conftest import capacities

U3 = Universe(3)


def test_universe_cap(monkeypatch):
    with pytest.raises(UniverseTooLarge):
        Universe(7)
    monkeypatch.setenv("CAPTRANS_MAX_N", "7")
    with pytest.warns(RuntimeWarning):
        assert Universe(7).size == 128


def test_universe_labels_and_describe():
    u = Universe(3, ("a", "b", "c"))
    assert u.describe(0b101) == "{a,c}"
    assert Universe(2).labels == ("x1", "x2")
    with pytest.raises(ValueError):
        Universe(2, ("a", "a"))


class TestValidate:
    def test_additive_measure_is_valid_and_normalized(self, additive_pair):
        mu, _ = additive_pair
        assert mu.normalized
        assert mu[0b011] == pytest.approx(0.5)

    def test_null_game(self):
        mu = validate_capacity(np.zeros(8), U3)
        assert not mu.normalized

    def test_monotonicity_violation_names_pair(self):
        vals = [0, 0.5, 0.0, 0.4, 0.0, 0.5, 0.0, 1.0]
        with pytest.raises(MonotonicityViolation) as exc:
            validate_capacity(vals, U3)
        assert exc.value.pair == (0b001, 0b011)

    def test_boundary(self):
        with pytest.raises(BoundaryViolation):
            validate_capacity([0.1] + [1.0] * 7, U3)

    def test_negative(self):
        with pytest.raises(NegativeValue):
            validate_capacity([0, -0.1, 0, 0, 0, 0, 0, 1], U3)

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            validate_capacity([0, 1], U3)


class TestMobius:
    def test_additive_interactions_vanish(self, additive_pair):
        tau = mobius(additive_pair[0]).values
        np.testing.assert_allclose(tau[[1, 2, 4]], [0.2, 0.3, 0.5], atol=1e-12)
        np.testing.assert_allclose(tau[[3, 5, 6, 7]], 0.0, atol=1e-12)

    def test_lack_pair_nu(self, lack_pair):
        nu = lack_pair[1]
        expected = literal_mobius(nu.values, 3)  # oracle: definitional sum
        np.testing.assert_allclose(expected, [0, 0.2, 0, 0, 0, 0, 0, 0.8], atol=1e-12)
        np.testing.assert_allclose(mobius(nu).values, expected, atol=1e-12)

    def test_threshold_at_two_of_three(self):
        tau = mobius(catalog.threshold_measure(2)).values
        assert tau[7] == -2
        assert all(tau[s] == 1 for s in (3, 5, 6))

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_threshold_family(self, k):
        assert mobius(catalog.threshold_measure(k)).values[-1] == pytest.approx(-k, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_nested_threshold_family(self, n):
        assert mobius(catalog.nested_threshold(n)).values[-1] == pytest.approx((n * n + n) / 2, abs=1e-9)

    def test_inverse_unanimity(self):
        m = np.zeros(8)
        m[7] = 1
        mu = mobius_inverse(SetVector(U3, m, "mobius"))
        np.testing.assert_array_equal(mu.values, [0] * 7 + [1])

    def test_inverse_rejects_non_measures(self):
        m = np.zeros(8)
        m[1], m[3] = 0.5, -0.7
        with pytest.raises(NotAMeasure):
            mobius_inverse(SetVector(U3, m, "mobius"))

    def test_inverse_roundtrip_lack_pair(self, lack_pair):
        for mu in lack_pair:
            np.testing.assert_allclose(mobius_inverse(mobius(mu)).values, mu.values, atol=1e-12)


class TestBelief:
    def test_lack_pair_nu_is_belief(self, lack_pair):
        assert is_belief(lack_pair[1])

    def test_threshold_is_not_belief(self):
        assert not is_belief(catalog.threshold_measure(2))

    def test_probability_is_belief(self, additive_pair):
        assert is_belief(additive_pair[0])


class TestMaxplus:
    def test_additive_pair_values(self, additive_pair):
        mu, nu = additive_pair
        np.testing.assert_allclose(maxplus(mu).values, [0, .2, .3, .2, .5, .2, .3, .2], atol=1e-12)
        np.testing.assert_allclose(maxplus(nu).values, [0, .2, .2, .2, .6, .2, .2, .2], atol=1e-12)

    def test_lack_pair_nu(self, lack_pair):
        np.testing.assert_allclose(maxplus(lack_pair[1]).values, [0, .2, 0, 0, 0, 0, 0, .8], atol=1e-12)

    def test_inverse_singletons_only(self):
        u = Universe(2)
        mu = maxplus_inverse(SetVector(u, [0, 1, 1, 0], "maxplus"))
        np.testing.assert_array_equal(mu.values, [0, 1, 1, 1])

    def test_inverse_zero(self):
        mu = maxplus_inverse(SetVector(U3, np.zeros(8), "maxplus"))
        assert not mu.values.any()

    def test_inverse_roundtrip_additive(self, additive_pair):
        mu = additive_pair[0]
        np.testing.assert_allclose(maxplus_inverse(maxplus(mu)).values, mu.values, atol=1e-12)


class TestAdditive:
    def test_cases(self, additive_pair, lack_pair):
        assert is_additive(additive_pair[0])
        assert not is_additive(lack_pair[1])
        assert not is_additive(unanimity(U3))


@given(capacities())
@settings(max_examples=60, deadline=None)
def test_roundtrips(mu):
    np.testing.assert_allclose(maxplus_inverse(maxplus(mu)).values, mu.values, atol=1e-9)
    np.testing.assert_allclose(mobius_inverse(mobius(mu)).values, mu.values, atol=1e-9)


@given(capacities(normalized=True))
@settings(max_examples=60, deadline=None)
def test_maxplus_nonnegative_and_bounded(mu):
    tau = maxplus(mu).values
    assert tau.min() >= 0
    if mu.normalized:
        assert tau.max() <= 1 + 1e-9


@given(capacities(max_n=5))
@settings(max_examples=40, deadline=None)
def test_additive_maxplus_is_min_singleton(mu):
    p = mu.singletons
    add = additive(p)
    tau = maxplus(add).values
    for s in range(1, add.universe.size):
        assert tau[s] == pytest.approx(min(p[i] for i in range(add.n) if s >> i & 1), abs=1e-12)
    mob = mobius(add).values
    assert all(abs(mob[s]) <= 1e-12 for s in range(add.universe.size) if popcount(s) >= 2)


def test_threshold_within_core():
    mu = threshold(Universe(4), 2, within=0b0111)
    assert mu[0b1011] == 1 and mu[0b1001] == 0
