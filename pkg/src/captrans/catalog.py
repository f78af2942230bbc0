"""Reference measures and plans on small universes.

Masks: 1={x1}, 2={x2}, 3={x1,x2}, 4={x3}, 5={x1,x3}, 6={x2,x3}, 7=X.
"""

import numpy as np

from .setfun import Capacity, Universe, threshold, validate_capacity


def additive_pair():
    """Two probability measures: p = (0.2, 0.3, 0.5), q = (0.2, 0.2, 0.6)."""
    u = Universe(3)
    mu = validate_capacity([0, 0.2, 0.3, 0.5, 0.5, 0.7, 0.8, 1.0], u)
    nu = validate_capacity([0, 0.2, 0.2, 0.4, 0.6, 0.8, 0.8, 1.0], u)
    return mu, nu


def additive_pair_plan():
    """A feasible (max,+) plan for ``additive_pair`` (one of several)."""
    a = np.zeros((8, 8))
    for s in (1, 2, 3, 5, 6, 7):
        a[s, s] = 0.2
    a[2, 4] = 0.1
    a[4, 4] = 0.5
    a[6, 0] = 0.1
    return a


def lack_pair():
    """A pair whose (max,+) transforms carry different total mass (1.7 vs 1),
    so any plan must leave mass unassigned."""
    u = Universe(3)
    mu = validate_capacity([0, 0.2, 0.3, 0.4, 0.5, 0.6, 0.9, 1.0], u)
    nu = validate_capacity([0, 0.2, 0.0, 0.2, 0.0, 0.2, 0.0, 1.0], u)
    return mu, nu


def lack_pair_plan():
    """Feasible plan for ``lack_pair``: the surplus of mu goes to the empty set."""
    a = np.zeros((8, 8))
    a[1, 1] = 0.2
    a[2, 7] = 0.3
    a[4, 7] = 0.5
    a[3, 0] = 0.1
    a[5, 0] = 0.1
    a[6, 0] = 0.4
    a[7, 0] = 0.1
    return a


def lack_pair_negative_plan():
    """Balances ``lack_pair`` with a negative lack on nu's X; not admissible."""
    a = np.zeros((8, 8))
    a[1, 1] = 0.2
    for s, v in ((2, 0.3), (4, 0.5), (3, 0.1), (5, 0.1), (6, 0.4), (7, 0.1)):
        a[s, 7] = v
    a[0, 7] = -0.7
    return a


def threshold_measure(k: int) -> Capacity:
    """1 on sets of at least k elements of a (k+1)-element universe."""
    return threshold(Universe(k + 1), k)


def nested_threshold(n: int) -> Capacity:
    """1 on sets of at least n elements of an (n+2)-element universe; the
    Moebius value on the whole universe is (n**2 + n) / 2."""
    return threshold(Universe(n + 2), n)


def paired_thresholds(n: int):
    """Two threshold measures on 3n elements with disjoint cores.

    mu is 1 on sets containing n elements of A0 = {x1..x_{n+1}}, nu on sets
    containing n elements of B0 = {x_{n+2}..x_{2n+2}}. Returns
    (mu, nu, A0, B0) with the cores as masks.
    """
    u = Universe(3 * n)
    a0 = (1 << (n + 1)) - 1
    b0 = a0 << (n + 1)
    return threshold(u, n, within=a0), threshold(u, n, within=b0), a0, b0


def paired_thresholds_plan(n: int) -> np.ndarray:
    """Signed plan matching the Moebius marginals of ``paired_thresholds``:
    each (A0 - x_i) goes to (B0 - y_i) with mass 1 and (A0, B0) carries -n."""
    _, _, a0, b0 = paired_thresholds(n)
    size = 1 << (3 * n)
    a = np.zeros((size, size))
    for i in range(n + 1):
        a[a0 & ~(1 << i), b0 & ~(1 << (n + 1 + i))] = 1.0
    a[a0, b0] = -float(n)
    return a
