"""Numerical probes around permanents, Dittert's function and Hajek's polynomial.

Nothing here proves anything: searches return the best value found, which is
a lower bound on the true maximum, and every report carries its witness.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial, log2, prod
from numbers import Rational

import numpy as np
from scipy import sparse

from .ascent import simplex_ascent
from .errors import GuardExceeded
from .hypergraph import RMultigraph
from .lagrangian import lambda_estimate, resolve_seed

PERMANENT_GUARD = 12
DITTERT_GUARD = 4
HAJEK_VERTEX_GUARD = 100
HAJEK_CANDIDATE_GUARD = 1_000_000
TETRACODE_GENERATOR = ((1, 0, 1, 1), (0, 1, 1, 2))


def _as_rows(A):
    rows = [list(row) for row in A]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    return rows


def _is_rational(rows) -> bool:
    return all(isinstance(v, Rational) for row in rows for v in row)


def permanent(A, max_n: int = PERMANENT_GUARD):
    """Permanent by inclusion-exclusion over column subsets (Gray-code order).

    Rational entries give an exact Fraction, anything else a float.
    """
    rows = _as_rows(A)
    n = len(rows)
    if n > max_n:
        raise GuardExceeded(f"permanent limited to order {max_n}, got {n}")
    if n == 0:
        return Fraction(1)
    if _is_rational(rows):
        rows = [[Fraction(v) for v in row] for row in rows]
        zero = Fraction(0)
    else:
        rows = [[float(v) for v in row] for row in rows]
        zero = 0.0
    sums = [zero] * n
    total = zero
    prev = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        j = (gray ^ prev).bit_length() - 1
        sign = 1 if gray & (1 << j) else -1
        for i in range(n):
            sums[i] += sign * rows[i][j]
        prev = gray
        term = prod(sums)
        total += -term if bin(gray).count("1") % 2 else term
    return total if n % 2 == 0 else -total


def _check_psi_domain(rows, exact: bool) -> None:
    if any(v < 0 for row in rows for v in row):
        raise ValueError("matrix entries must be nonnegative")
    total = sum(sum(row) for row in rows)
    if (exact and total != 1) or (not exact and abs(total - 1) > 1e-12):
        raise ValueError(f"matrix entries must sum to 1, got {total}")


def psi(A):
    """Product of row sums plus product of column sums minus the permanent."""
    rows = _as_rows(A)
    exact = _is_rational(rows)
    if exact:
        rows = [[Fraction(v) for v in row] for row in rows]
    else:
        rows = [[float(v) for v in row] for row in rows]
    _check_psi_domain(rows, exact)
    row_sums = [sum(row) for row in rows]
    col_sums = [sum(col) for col in zip(*rows)]
    return prod(row_sums) + prod(col_sums) - permanent(rows)


def flat_matrix(n: int) -> list[list[Fraction]]:
    """J_n: every entry 1/n^2."""
    return [[Fraction(1, n * n)] * n for _ in range(n)]


class _PsiObjective:
    """Batched value and gradient of psi for matrices flattened row-major."""

    def __init__(self, n: int):
        self.n = n
        self.perms = np.array(list(permutations(range(n))), dtype=np.intp)
        flat = (np.arange(n)[None, :] * n + self.perms).ravel()
        self._scatter = sparse.csc_matrix(
            (np.ones(flat.size), (flat, np.arange(flat.size))), shape=(n * n, flat.size)
        )

    @staticmethod
    def _loo(P):
        left = np.ones_like(P)
        right = np.ones_like(P)
        left[..., 1:] = np.cumprod(P[..., :-1], axis=-1)
        right[..., :-1] = np.cumprod(P[..., :0:-1], axis=-1)[..., ::-1]
        return left * right

    def __call__(self, X):
        n, S = self.n, len(X)
        A = X.reshape(S, n, n)
        rows, cols = A.sum(axis=2), A.sum(axis=1)
        P = A[:, np.arange(n)[None, :], self.perms]  # (S, perms, n)
        loo_p = self._loo(P)
        per = (loo_p[..., 0] * P[..., 0]).sum(axis=1)
        loo_r, loo_c = self._loo(rows), self._loo(cols)
        value = rows.prod(axis=1) + cols.prod(axis=1) - per
        grad = loo_r[:, :, None] + loo_c[:, None, :]
        grad = grad.reshape(S, n * n) - np.asarray((self._scatter @ loo_p.reshape(S, -1).T).T)
        return value, grad


def dittert_search(
    n: int,
    restarts: int = 32,
    max_iters: int = 4000,
    tol: float = 1e-12,
    seed: int | None = 1,
) -> dict:
    """Multi-start ascent of psi over nonnegative n x n matrices with entry sum 1.

    Starts are J_n, every permutation matrix divided by n, and ``restarts``
    Dirichlet(1) matrices.  The best value found is a lower bound on the max.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if n > DITTERT_GUARD:
        raise GuardExceeded(f"dittert search limited to order {DITTERT_GUARD}, got {n}")
    seed = resolve_seed(seed)
    rng = np.random.default_rng(seed)
    perm_starts = np.zeros((factorial(n), n * n))
    for k, p in enumerate(permutations(range(n))):
        perm_starts[k, np.arange(n) * n + np.array(p)] = 1.0 / n
    starts = np.vstack([
        np.full((1, n * n), 1.0 / (n * n)),
        perm_starts,
        rng.dirichlet(np.ones(n * n), size=restarts),
    ])
    res = simplex_ascent(_PsiObjective(n), starts, max_iters, tol)
    best = int(np.argmax(res.values))
    A = res.points[best].reshape(n, n)
    A = A / A.sum()
    return {
        "n": n,
        "best_psi": float(psi(A.tolist())),
        "best_A": A,
        "psi_flat": psi(flat_matrix(n)),
        "starts": len(starts),
        "iterations": res.iterations,
        "seed": seed,
    }


def _vertex_id(point, n: int) -> int:
    v = 0
    for c in point:
        v = v * n + c
    return v


def hajek_hypergraph(
    n: int,
    k: int,
    max_vertices: int = HAJEK_VERTEX_GUARD,
    max_candidates: int = HAJEK_CANDIDATE_GUARD,
) -> RMultigraph:
    """n-uniform graph on [n]^k: n-sets whose j-th coordinates are distinct for some j.

    Point ``(c_1, ..., c_k)`` is vertex ``c_1 n^(k-1) + ... + c_k``, the same
    numbering as the left-associated strong power of an n-edge.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    if n**k > max_vertices:
        raise GuardExceeded(f"n^k = {n**k} exceeds the vertex guard {max_vertices}")
    candidates = k * n ** ((k - 1) * n)
    if candidates > max_candidates:
        raise GuardExceeded(f"{candidates} candidate edges exceed the guard {max_candidates}")
    rest = list(product(range(n), repeat=k - 1))
    edges = set()
    for j in range(k):
        for choice in product(rest, repeat=n):
            points = (tail[:j] + (c,) + tail[j:] for c, tail in enumerate(choice))
            edges.add(tuple(sorted(_vertex_id(p, n) for p in points)))
    return RMultigraph(n, n**k, tuple(sorted(edges)))


def hajek_uniform_value(n: int, k: int) -> Fraction:
    """1 - (1 - n!/n^n)^k: the Lagrangian polynomial of the Hajek graph at the uniform point."""
    return 1 - (1 - Fraction(factorial(n), n**n)) ** k


def tetracode() -> list[tuple[int, ...]]:
    """The nine codewords of the ternary [4, 2, 3] tetracode."""
    g1, g2 = TETRACODE_GENERATOR
    return sorted(
        tuple((a * x + b * y) % 3 for x, y in zip(g1, g2)) for a in range(3) for b in range(3)
    )


def _tetracode_starts(k: int) -> np.ndarray:
    code = tetracode()
    size = 3**k
    starts = []
    for shift in product(range(3), repeat=4):
        coset = {tuple((c + s) % 3 for c, s in zip(word, shift)) for word in code}
        x = np.zeros(size)
        for word in coset:
            x[_vertex_id(word, 3)] = 1.0 / len(coset)
        starts.append(x)
    starts = np.unique(np.array(starts), axis=0)
    base = np.zeros(size)
    base[[_vertex_id(w, 3) for w in code]] = 1.0 / 9
    uniform = np.full(size, 1.0 / size)
    mixes = [(1 - t) * uniform + t * base for t in (0.25, 0.5, 0.75, 0.9)]
    return np.vstack([starts, np.array(mixes)])


def hajek_counterexample_search(
    n: int,
    k: int,
    restarts: int = 16,
    max_iters: int = 2000,
    tol: float = 1e-12,
    seed: int | None = 1,
    margin: float = 1e-12,
) -> dict:
    """Look for points beating the uniform value of the Hajek graph.

    For (3, 4) the start set includes uniform points on the tetracode and its
    cosets plus blends of the tetracode with the uniform point.  Exploratory:
    a value above the uniform one by more than ``margin`` is reported.
    """
    G = hajek_hypergraph(n, k)
    extra = _tetracode_starts(k) if (n, k) == (3, 4) else None
    report = lambda_estimate(
        G,
        restarts=restarts,
        max_iters=max_iters,
        tol=tol,
        seed=seed,
        support_size=6 if G.n <= 16 else 0,
        extra_starts=extra,
    )
    uniform = hajek_uniform_value(n, k)
    return {
        "n": n,
        "k": k,
        "best_value": report.estimate,
        "uniform_value": uniform,
        "exceeds_uniform": report.estimate > float(uniform) + margin,
        "witness": report.witness,
        "starts": report.restarts_used,
        "iterations": report.iterations,
        "seed": report.seed,
    }


def korner_marton_check(r: int, k: int, lambda_est: float, slack: float = 1e-9) -> dict:
    """Compare the rate (1/k) log2(1 / (1 - lambda)) of a strong power with its bounds."""
    if r < 1 or k < 1:
        raise ValueError("r and k must be >= 1")
    if not 0 <= lambda_est <= 1:
        raise ValueError("lambda estimate must lie in [0, 1]")
    edge = factorial(r) / r**r
    lower = log2(1 / (1 - edge)) if edge < 1 else float("inf")
    upper = factorial(r) / r ** (r - 1)
    rate = log2(1 / (1 - lambda_est)) / k if lambda_est < 1 else float("inf")
    return {
        "r": r,
        "k": k,
        "lambda": lambda_est,
        "rate": rate,
        "lower_bound": lower,
        "upper_bound": upper,
        "lower_ok": rate + slack >= lower,
        "upper_consistent": rate <= upper + slack,
    }
