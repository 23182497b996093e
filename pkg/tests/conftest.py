from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import numpy as np
import pytest

from turan.hypergraph import make_graph


def random_graph(rng, n, r, p=0.5, multi=False):
    pool = combinations_with_replacement(range(n), r) if multi else combinations(range(n), r)
    return make_graph(r, n, [e for e in pool if rng.random() < p])


def nonempty_graph(rng, n, r, p=0.5, multi=False):
    if n < r and not multi:
        raise ValueError("no simple edge fits")
    while True:
        G = random_graph(rng, n, r, p, multi)
        if G.e:
            return G


def random_rational_point(rng, n, denom=12):
    w = [int(v) + 1 for v in rng.integers(0, denom, size=n)]
    return [Fraction(v, sum(w)) for v in w]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
