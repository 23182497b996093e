from fractions import Fraction
from itertools import permutations
from math import factorial, log2, prod

import numpy as np
import pytest

from turan.canon import is_isomorphic
from turan.conjectures import (
    _PsiObjective,
    dittert_search,
    flat_matrix,
    hajek_counterexample_search,
    hajek_hypergraph,
    hajek_uniform_value,
    korner_marton_check,
    permanent,
    psi,
    tetracode,
)
from turan.constructions import strong_power
from turan.errors import GuardExceeded
from turan.hypergraph import complete_graph, single_edge
from turan.lagrangian import evaluate_p, lambda_estimate


def naive_permanent(A):
    n = len(A)
    return sum(prod(A[i][p[i]] for i in range(n)) for p in permutations(range(n)))


def test_permanent_examples():
    for n in range(1, 6):
        D = [[Fraction(1, n) if i == j else 0 for j in range(n)] for i in range(n)]
        assert permanent(D) == Fraction(1, n**n)
    assert permanent(flat_matrix(3)) == Fraction(6, 729)
    assert permanent([[2, 3], [5, 7]]) == 2 * 7 + 3 * 5
    assert permanent([]) == 1


def test_permanent_matches_naive(rng):
    for n in range(1, 7):
        A = [[Fraction(int(v), 7) for v in row] for row in rng.integers(0, 7, size=(n, n))]
        assert permanent(A) == naive_permanent(A)
        F = rng.random((n, n))
        assert abs(permanent(F.tolist()) - naive_permanent(F.tolist())) < 1e-9


def test_permanent_guard():
    with pytest.raises(GuardExceeded):
        permanent(np.ones((13, 13)).tolist())


def test_psi_examples():
    assert psi(flat_matrix(2)) == Fraction(3, 8)
    assert psi(flat_matrix(3)) == Fraction(16, 243)
    for n in (2, 3, 4):
        P = [[Fraction(1, n) if j == (i + 1) % n else 0 for j in range(n)] for i in range(n)]
        assert psi(P) == Fraction(1, n**n)
    with pytest.raises(ValueError):
        psi([[Fraction(1, 2), 0], [0, 0]])
    with pytest.raises(ValueError):
        psi([[-0.5, 0.5], [0.5, 0.5]])


def test_psi_symmetries(rng):
    for _ in range(10):
        A = rng.dirichlet(np.ones(9)).reshape(3, 3)
        base = psi(A.tolist())
        assert abs(psi(A.T.tolist()) - base) < 1e-15
        p, q = rng.permutation(3), rng.permutation(3)
        assert abs(psi(A[p][:, q].tolist()) - base) < 1e-15


def test_psi_objective_gradient(rng):
    obj = _PsiObjective(3)
    X = rng.dirichlet(np.ones(9), size=4)
    v, g = obj(X)
    for s in range(4):
        assert abs(v[s] - psi(X[s].reshape(3, 3).tolist())) < 1e-14
    h = 1e-6
    for k in range(9):
        e = np.zeros(9)
        e[k] = h
        fd = (obj(X + e)[0] - obj(X - e)[0]) / (2 * h)
        assert np.allclose(fd, g[:, k], atol=1e-7)


@pytest.mark.parametrize("n,target", [(2, 0.375), (3, 16 / 243)])
def test_dittert_small(n, target):
    rep = dittert_search(n)
    assert abs(rep["best_psi"] - target) <= 1e-6
    assert np.abs(rep["best_A"] - 1 / n**2).max() <= 1e-3


def test_dittert_four_not_below_flat():
    rep = dittert_search(4, restarts=8)
    assert rep["best_psi"] >= float(psi(flat_matrix(4))) - 1e-15
    assert rep["psi_flat"] == Fraction(2, 256) - Fraction(24, 65536)
    with pytest.raises(GuardExceeded):
        dittert_search(5)


def test_hajek_examples():
    assert hajek_hypergraph(2, 1) == single_edge(2)
    assert hajek_hypergraph(2, 2) == complete_graph(4)
    for n, k in ((3, 2), (2, 3), (2, 4), (3, 3)):
        H = hajek_hypergraph(n, k)
        assert H.simple and H.r == n and H.n == n**k
        assert H == strong_power(single_edge(n), k)
    with pytest.raises(GuardExceeded):
        hajek_hypergraph(5, 3)


def test_hajek_isomorphic_to_power_by_canonical_form():
    for n, k in ((2, 2), (3, 2), (2, 3)):
        assert is_isomorphic(hajek_hypergraph(n, k), strong_power(single_edge(n), k))


def test_hajek_uniform_value():
    assert hajek_uniform_value(3, 4) == Fraction(4160, 6561)
    assert hajek_uniform_value(2, 2) == Fraction(3, 4)
    for n in range(1, 6):
        assert hajek_uniform_value(n, 1) == Fraction(factorial(n), n**n)
    for n, k in ((2, 2), (2, 3), (3, 2), (2, 5), (3, 3), (4, 2)):
        G = hajek_hypergraph(n, k)
        assert evaluate_p(G, [Fraction(1, G.n)] * G.n, exact=True) == hajek_uniform_value(n, k)


def test_tetracode():
    code = tetracode()
    assert len(code) == 9 and (0, 0, 0, 0) in code
    dists = [sum(a != b for a, b in zip(u, v)) for u in code for v in code if u < v]
    assert min(dists) == 3
    # self-dual: every pair of codewords is orthogonal over F_3
    assert all(sum(a * b for a, b in zip(u, v)) % 3 == 0 for u in code for v in code)


def test_tetracode_point_beats_uniform():
    # uniform weight on the nine codewords of [3]^4, evaluated exactly
    G = hajek_hypergraph(3, 4)
    x = [Fraction(0)] * G.n
    for w in tetracode():
        x[w[0] * 27 + w[1] * 9 + w[2] * 3 + w[3]] = Fraction(1, 9)
    value = evaluate_p(G, x, exact=True)
    assert value == Fraction(56, 81)
    assert value > hajek_uniform_value(3, 4)


def test_hajek_search_small():
    rep = hajek_counterexample_search(2, 2, restarts=4)
    assert not rep["exceeds_uniform"] and abs(rep["best_value"] - 0.75) < 1e-9
    rep = hajek_counterexample_search(3, 1, restarts=4)
    assert not rep["exceeds_uniform"]


def test_korner_marton_examples():
    rep = korner_marton_check(2, 2, 0.75)
    assert rep["lower_ok"] and rep["upper_consistent"]
    assert rep["rate"] == rep["lower_bound"] == rep["upper_bound"] == 1
    rep = korner_marton_check(3, 1, 2 / 9)
    assert rep["lower_ok"] and abs(rep["lower_bound"] - log2(9 / 7)) < 1e-15
    assert rep["upper_bound"] == pytest.approx(2 / 3)
    assert not korner_marton_check(3, 2, 0.0)["lower_ok"]
    assert not korner_marton_check(3, 1, 0.9)["upper_consistent"]
    with pytest.raises(ValueError):
        korner_marton_check(3, 2, 1.5)


def test_korner_marton_soundness():
    for r, k in ((2, 2), (2, 3), (3, 2)):
        lam = lambda_estimate(strong_power(single_edge(r), k), restarts=4, support_size=0).estimate
        assert korner_marton_check(r, k, lam)["upper_consistent"]
