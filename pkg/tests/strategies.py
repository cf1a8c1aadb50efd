"""Random generators of valid spaces, driven by an integer seed."""

import math
import random

from hypothesis import strategies as st

from partialmetric import FiniteSpace, MetricKind, lift_to_n
from partialmetric.spaces import CatalogSpec, build_space

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _points(rng, m, gap=0.05):
    while True:
        pts = [(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(m)]
        if all(math.dist(p, q) > gap for i, p in enumerate(pts) for q in pts[:i]):
            return pts


def random_metric(rng, m=None):
    m = m or rng.randint(1, 5)
    pts = _points(rng, m)
    return FiniteSpace.from_function(
        [f"p{i}" for i in range(m)], MetricKind.of("metric", 2), lambda t: math.dist(pts[t[0]], pts[t[1]])
    )


def random_partial(rng, m=None):
    """A valid partial metric on at most 5 points, from one of three recipes."""
    m = m or rng.randint(1, 5)
    recipe = rng.randrange(3)
    if recipe == 0:
        # (d(x,y) + w(x) + w(y)) / 2 with a 1-Lipschitz weight
        d = random_metric(rng, m)
        lam, ref, k = rng.uniform(-1, 1), rng.randrange(m), rng.uniform(-2, 2)
        w = [lam * d.at((ref, i)) + k for i in range(m)]
        return FiniteSpace.from_function(
            d.elements, MetricKind.of("partial", 2), lambda t: (d.at(t) + w[t[0]] + w[t[1]]) / 2
        )
    if recipe == 1:
        pts = rng.sample(range(-20, 21), m)
        return build_space(CatalogSpec("max_partial", tuple(p / 4 for p in pts)))
    d = random_metric(rng, m)
    r = rng.uniform(-2, 2)
    return FiniteSpace.from_function(d.elements, MetricKind.of("partial", 2), lambda t: d.at(t) + r)


def random_n_metric(rng, n=3, m=None):
    m = m or rng.randint(1, 5)
    if rng.random() < 0.8:
        return lift_to_n(random_metric(rng, m), n)
    return build_space(CatalogSpec("unit_n", (n, m)))


def random_partial_n(rng, n=3, m=None):
    m = m or rng.randint(1, 5)
    recipe = rng.randrange(3)
    if recipe == 0:
        return lift_to_n(random_partial(rng, m), n)
    if recipe == 1:
        pts = rng.sample(range(-20, 21), m)
        return build_space(CatalogSpec("max_partial_n", (n, *(p / 4 for p in pts))))
    return build_space(CatalogSpec("discrete_pm11", (n, m)))


def random_strong(rng, m=None):
    d = random_metric(rng, m)
    r = rng.uniform(-2, 2)
    return FiniteSpace.from_function(d.elements, MetricKind.of("strong", 2), lambda t: d.at(t) + r)


def random_table(rng, kind, m):
    """Arbitrary small-integer table, often violating the axioms."""
    from itertools import combinations_with_replacement

    return FiniteSpace(
        [f"e{i}" for i in range(m)],
        kind,
        {t: rng.randint(-2, 3) for t in combinations_with_replacement(range(m), kind.arity)},
    )


def rng_of(seed):
    return random.Random(seed)
