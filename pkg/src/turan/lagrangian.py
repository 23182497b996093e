"""The Lagrangian polynomial of an r-multigraph and its maximum on the simplex.

For an edge D the polynomial has the monomial ``r! / prod_i D(i)! * prod_i x_i^D(i)``;
the coefficient is a multinomial coefficient and therefore an integer.
:func:`lambda_estimate` maximizes the polynomial numerically; the value it
reports is the polynomial evaluated at the returned witness, so it is always
a lower bound on the true maximum.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Sequence

import numpy as np
from scipy import sparse

from .ascent import simplex_ascent
from .hypergraph import RMultigraph, complement, multiplicities

# Rows of (starts x edges x r) gathered at once; bounds peak memory per chunk.
GATHER_BUDGET = 2_000_000


def edge_coefficient(edge) -> int:
    return factorial(len(edge)) // prod(factorial(m) for _, m in multiplicities(edge))


class LagrangianPolynomial:
    """Vectorized evaluation of a graph's Lagrangian polynomial and its gradient."""

    def __init__(self, G: RMultigraph):
        self.n, self.r, self.m = G.n, G.r, G.e
        self.index = np.array(G.edges, dtype=np.intp).reshape(self.m, self.r)
        self.coef = np.array([edge_coefficient(e) for e in G.edges], dtype=float)
        rows = np.arange(self.m * self.r)
        self._scatter = sparse.csc_matrix(
            (np.ones(self.m * self.r), (self.index.ravel(), rows)),
            shape=(self.n, self.m * self.r),
        )

    def chunk_size(self) -> int:
        return max(1, GATHER_BUDGET // max(1, self.m * self.r))

    def value(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(X)
        if self.m == 0:
            return np.zeros(len(X))
        return X[:, self.index].prod(axis=2) @ self.coef

    def value_and_grad(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        X = np.atleast_2d(X)
        S = len(X)
        if self.m == 0:
            return np.zeros(S), np.zeros((S, self.n))
        P = X[:, self.index]
        # leave-one-out products along the edge axis
        left = np.ones_like(P)
        right = np.ones_like(P)
        if self.r > 1:
            left[:, :, 1:] = np.cumprod(P[:, :, :-1], axis=2)
            right[:, :, :-1] = np.cumprod(P[:, :, :0:-1], axis=2)[:, :, ::-1]
        loo = left * right
        values = (loo[:, :, 0] * P[:, :, 0]) @ self.coef
        W = (loo * self.coef[None, :, None]).reshape(S, -1)
        grad = np.asarray((self._scatter @ W.T).T)
        return values, grad


@lru_cache(maxsize=32)
def polynomial(G: RMultigraph) -> LagrangianPolynomial:
    return LagrangianPolynomial(G)


def _check_dim(G: RMultigraph, x) -> None:
    if len(x) != G.n:
        raise ValueError(f"point has dimension {len(x)}, graph has {G.n} vertices")


def evaluate_p(G: RMultigraph, x: Sequence, exact: bool = False):
    """Evaluate the Lagrangian polynomial of ``G`` at ``x``.

    With ``exact=True`` every entry is converted to a Fraction and the result
    is an exact rational.
    """
    _check_dim(G, x)
    if exact:
        xs = [Fraction(v) for v in x]
        total = Fraction(0)
        for e in G.edges:
            total += edge_coefficient(e) * prod((xs[v] for v in e), start=Fraction(1))
        return total
    return float(polynomial(G).value(np.asarray(x, dtype=float))[0])


def gradient_p(G: RMultigraph, x: Sequence, exact: bool = False):
    """Partial derivatives of the Lagrangian polynomial at ``x``."""
    _check_dim(G, x)
    if exact:
        xs = [Fraction(v) for v in x]
        grad = [Fraction(0)] * G.n
        for e in G.edges:
            c = edge_coefficient(e)
            for v, m in multiplicities(e):
                rest = list(e)
                rest.remove(v)
                grad[v] += c * prod((xs[u] for u in rest), start=Fraction(1))
        return grad
    _, g = polynomial(G).value_and_grad(np.asarray(x, dtype=float))
    return g[0]


def lambda_exact_complete(t: int, r: int) -> Fraction:
    """Value of K_t^r at the uniform point: C(t, r) * r! / t^r."""
    if t < r:
        raise ValueError(f"need t >= r, got t={t}, r={r}")
    return Fraction(comb(t, r) * factorial(r), t**r)


def duality_sum(G: RMultigraph, x: Sequence) -> Fraction:
    """Exact value of p_G(x) + p_complement(G)(x)."""
    return evaluate_p(G, x, exact=True) + evaluate_p(complement(G), x, exact=True)


def duality_check(G: RMultigraph, x: Sequence) -> bool:
    """Check p_G(x) + p_complement(G)(x) == 1 exactly for a rational simplex point."""
    xs = [Fraction(v) for v in x]
    if any(v < 0 for v in xs) or sum(xs) != 1:
        raise ValueError("duality needs a point of the simplex with rational entries summing to 1")
    return duality_sum(G, xs) == 1


@dataclass
class LagrangianReport:
    estimate: float
    witness: np.ndarray
    restarts_used: int
    iterations: int
    gradient_residual: float
    seed: int
    start_values: np.ndarray = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "lambda": self.estimate,
            "witness": [float(v) for v in self.witness],
            "restarts": self.restarts_used,
            "iterations": self.iterations,
            "seed": self.seed,
        }


def support_starts(n: int, max_size: int = 6, budget: int = 1024) -> np.ndarray:
    """Uniform points on every vertex subset of size <= max_size.

    Subset sizes are taken in increasing order while the total count fits the
    budget, so large vertex sets only get their small faces.
    """
    rows = []
    for k in range(1, min(n, max_size) + 1):
        if len(rows) + comb(n, k) > budget:
            break
        for sub in combinations(range(n), k):
            x = np.zeros(n)
            x[list(sub)] = 1.0 / k
            rows.append(x)
    return np.array(rows).reshape(len(rows), n)


def resolve_seed(seed: int | None) -> int:
    if seed is None:
        return int(np.random.SeedSequence().entropy % (2**63))
    return int(seed)


def lambda_estimate(
    G: RMultigraph,
    restarts: int = 64,
    max_iters: int = 4000,
    tol: float = 1e-12,
    seed: int | None = 1,
    support_size: int = 6,
    support_budget: int = 1024,
    extra_starts: np.ndarray | None = None,
    gtol: float = 1e-10,
) -> LagrangianReport:
    """Multi-start lower bound on the Lagrangian of ``G``.

    Starts: the uniform point, ``restarts`` Dirichlet(1) points drawn from
    ``seed``, uniform points on small vertex subsets, then ``extra_starts``.
    Ties between runs go to the earliest start.
    """
    if restarts < 0 or max_iters < 1 or tol <= 0:
        raise ValueError("restarts must be >= 0, max_iters >= 1 and tol > 0")
    seed = resolve_seed(seed)
    if G.n == 0:
        return LagrangianReport(0.0, np.zeros(0), 0, 0, 0.0, seed, np.zeros(0))

    rng = np.random.default_rng(seed)
    blocks = [np.full((1, G.n), 1.0 / G.n), rng.dirichlet(np.ones(G.n), size=restarts)]
    if support_size > 0:
        blocks.append(support_starts(G.n, support_size, support_budget))
    if extra_starts is not None and len(extra_starts):
        extra = np.asarray(extra_starts, dtype=float).reshape(-1, G.n)
        if np.any(extra < 0):
            raise ValueError("extra starts must be nonnegative")
        blocks.append(extra / extra.sum(axis=1, keepdims=True))
    starts = np.vstack(blocks)

    poly = polynomial(G)
    if G.e == 0:
        values = np.zeros(len(starts))
        return LagrangianReport(0.0, starts[0], len(starts), 0, 0.0, seed, values)

    points, values, residuals, iterations = [], [], [], 0
    step = poly.chunk_size()
    for lo in range(0, len(starts), step):
        res = simplex_ascent(poly.value_and_grad, starts[lo:lo + step], max_iters, tol, gtol)
        points.append(res.points)
        values.append(res.values)
        residuals.append(res.residuals)
        iterations += res.iterations
    points = np.vstack(points)
    values = np.concatenate(values)
    residuals = np.concatenate(residuals)

    best = int(np.argmax(values))
    witness = points[best] / points[best].sum()
    estimate = min(1.0, max(0.0, float(poly.value(witness)[0])))
    return LagrangianReport(
        estimate, witness, len(starts), iterations, float(residuals[best]), seed, values
    )
