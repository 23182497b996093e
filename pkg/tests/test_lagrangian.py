from fractions import Fraction
from itertools import combinations
from math import factorial

import numpy as np
import pytest

from conftest import nonempty_graph, random_graph, random_rational_point
from turan.ascent import kkt_residual, simplex_ascent
from turan.errors import NonFiniteError
from turan.hypergraph import (
    blow_up,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    find_embedding,
    make_graph,
    single_edge,
)
from turan.lagrangian import (
    duality_check,
    duality_sum,
    edge_coefficient,
    evaluate_p,
    gradient_p,
    lambda_estimate,
    lambda_exact_complete,
    support_starts,
)


def test_edge_coefficient_is_multinomial():
    assert edge_coefficient((0, 1, 2)) == 6
    assert edge_coefficient((0, 0, 1)) == 3
    assert edge_coefficient((2, 2, 2)) == 1


def test_evaluate_examples():
    assert evaluate_p(single_edge(3), [Fraction(1, 3)] * 3, exact=True) == Fraction(2, 9)
    assert evaluate_p(complete_graph(4, 3), [Fraction(1, 4)] * 4, exact=True) == Fraction(3, 8)
    assert evaluate_p(complete_graph(3), [0, 0, 1], exact=True) == 0
    loop = make_graph(3, 2, [(1, 1, 1), (0, 1, 1)])
    assert evaluate_p(loop, [0, 1], exact=True) == 1
    assert evaluate_p(complete_graph(4, 3), [0.25] * 4) == pytest.approx(0.375, abs=1e-15)
    with pytest.raises(ValueError):
        evaluate_p(single_edge(2), [1])


def test_exact_and_float_agree(rng):
    for _ in range(20):
        G = random_graph(rng, 5, 3, multi=True)
        x = random_rational_point(rng, 5)
        assert abs(float(evaluate_p(G, x, exact=True)) - evaluate_p(G, [float(v) for v in x])) < 1e-13


def test_gradient_examples():
    a = Fraction(1, 3)
    assert gradient_p(single_edge(2), [a, 1 - a], exact=True) == [2 * (1 - a), 2 * a]
    h = Fraction(1, 2)
    assert gradient_p(complete_graph(3), [h, h, 0], exact=True) == [1, 1, 2]
    g = gradient_p(complete_graph(4, 3), [0.25] * 4)
    assert np.allclose(g, g[0])


def test_gradient_matches_finite_differences(rng):
    h = 1e-6
    for _ in range(10):
        G = nonempty_graph(rng, 5, 3, multi=True)
        x = rng.dirichlet(np.ones(5))
        g = gradient_p(G, x)
        for i in range(5):
            e = np.zeros(5)
            e[i] = h
            fd = (evaluate_p(G, x + e) - evaluate_p(G, x - e)) / (2 * h)
            assert abs(fd - g[i]) <= 1e-5 * max(1.0, abs(g[i]))


def test_lambda_exact_complete():
    assert lambda_exact_complete(4, 3) == Fraction(3, 8)
    for t in range(2, 8):
        assert lambda_exact_complete(t, 2) == 1 - Fraction(1, t)
    for r in range(1, 6):
        assert lambda_exact_complete(r, r) == Fraction(factorial(r), r**r)
    with pytest.raises(ValueError):
        lambda_exact_complete(2, 3)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_lambda_single_edge(r):
    rep = lambda_estimate(single_edge(r))
    assert abs(rep.estimate - factorial(r) / r**r) <= 1e-9


def test_lambda_empty_and_trivial():
    assert lambda_estimate(empty_graph(0)).estimate == 0
    assert lambda_estimate(empty_graph(4)).estimate == 0
    assert lambda_estimate(make_graph(2, 1, [(0, 0)])).estimate == 1


@pytest.mark.parametrize("t", range(2, 7))
def test_lambda_cliques(t):
    assert abs(lambda_estimate(complete_graph(t)).estimate - (1 - 1 / t)) <= 1e-9


def test_lambda_k43_matches_uniform():
    rep = lambda_estimate(complete_graph(4, 3), restarts=64, seed=7)
    assert abs(rep.estimate - 0.375) <= 1e-9
    assert rep.estimate >= float(lambda_exact_complete(4, 3)) - 1e-12


def test_report_soundness(rng):
    for _ in range(10):
        G = random_graph(rng, 6, 3, multi=True)
        rep = lambda_estimate(G, restarts=8, seed=3)
        assert 0 <= rep.estimate <= 1
        assert abs(evaluate_p(G, rep.witness) - rep.estimate) <= 1e-12
        assert abs(rep.witness.sum() - 1) <= 1e-12 and (rep.witness >= 0).all()
        js = rep.to_json()
        assert set(js) == {"lambda", "witness", "restarts", "iterations", "seed"}


def test_determinism():
    G = cycle_graph(7)
    a = lambda_estimate(G, restarts=10, seed=5)
    b = lambda_estimate(G, restarts=10, seed=5)
    assert a.estimate == b.estimate and np.array_equal(a.witness, b.witness)


def test_entropy_seed_is_reported():
    rep = lambda_estimate(single_edge(2), restarts=2, seed=None)
    again = lambda_estimate(single_edge(2), restarts=2, seed=rep.seed)
    assert np.array_equal(rep.start_values, again.start_values)


def test_monotonicity_under_subgraphs(rng):
    for _ in range(8):
        G = random_graph(rng, 7, 2, p=0.6)
        H = make_graph(2, 7, [e for e in G.edges if rng.random() < 0.6])
        assert lambda_estimate(H, restarts=8).estimate <= lambda_estimate(G, restarts=8).estimate + 1e-7


def test_homomorphism_bound():
    pairs = [(cycle_graph(5), complete_graph(3)), (cycle_graph(6), complete_graph(2)), (complete_graph(4, 3), complete_graph(5, 3))]
    for G, H in pairs:
        assert find_embedding(G, H, injective=False) is not None
        assert lambda_estimate(H).estimate >= lambda_estimate(G).estimate - 1e-7


def test_disjoint_union_is_max(rng):
    for _ in range(6):
        G, H = random_graph(rng, 4, 3), random_graph(rng, 3, 3)
        lam = lambda_estimate(disjoint_union(G, H)).estimate
        assert abs(lam - max(lambda_estimate(G).estimate, lambda_estimate(H).estimate)) <= 1e-6


def test_blowup_invariance(rng):
    for _ in range(4):
        G = random_graph(rng, 4, 2)
        for t in (2, 3):
            lam_t = lambda_estimate(blow_up(G, [t] * 4), restarts=8).estimate
            assert abs(lam_t - lambda_estimate(G).estimate) <= 1e-6


def test_duality_examples(rng):
    assert duality_check(complete_graph(3), [Fraction(1, 3)] * 3)
    assert evaluate_p(complement(empty_graph(2)), [Fraction(1, 5), Fraction(4, 5)], exact=True) == 1
    for _ in range(30):
        n, r = int(rng.integers(1, 7)), int(rng.integers(1, 5))
        G = random_graph(rng, n, r, multi=True)
        assert duality_sum(G, random_rational_point(rng, n)) == 1
    with pytest.raises(ValueError):
        duality_check(complete_graph(3), [Fraction(1, 2)] * 3)


def test_support_starts_budget():
    S = support_starts(20, max_size=6, budget=1024)
    assert len(S) == 20 + 190  # triples would exceed the budget
    assert np.allclose(S.sum(axis=1), 1)


def test_ascent_plateau_and_faces():
    # a start on a face never leaves it
    G = complete_graph(4)
    starts = np.array([[0.5, 0.5, 0.0, 0.0]])
    from turan.lagrangian import polynomial

    res = simplex_ascent(polynomial(G).value_and_grad, starts)
    assert res.points[0, 2] == 0 and res.points[0, 3] == 0
    assert abs(res.values[0] - 0.5) < 1e-15


def test_kkt_residual_zero_at_optimum():
    X = np.full((1, 3), 1 / 3)
    g = np.ones((1, 3))
    assert kkt_residual(X, g)[0] == 0


def test_nonfinite_objective_raises():
    def bad(X):
        return np.full(len(X), np.nan), np.zeros_like(X)

    with pytest.raises(NonFiniteError):
        simplex_ascent(bad, np.full((1, 2), 0.5))


def test_motzkin_straus_small(rng):
    for _ in range(10):
        G = random_graph(rng, 6, 2)
        omega = max(k for k in range(1, 7) for S in combinations(range(6), k)
                    if all(e in G for e in combinations(S, 2)))
        assert abs(lambda_estimate(G).estimate - (1 - 1 / omega)) <= 1e-6
