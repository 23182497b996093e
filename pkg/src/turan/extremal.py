"""Exact Turán numbers ex(n, F) by branch and bound over edge subsets.

Desk-scale oracle only.  Edges of K_n^r are decided in lexicographic order;
a branch dies as soon as an included edge completes a copy of a forbidden
graph.  Copies are precomputed as bitmasks over the edges of K_n^r.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Iterable

from .errors import GuardExceeded
from .hypergraph import RMultigraph

PRUNED_GUARD = 35


@dataclass(frozen=True)
class ForbiddenFamily:
    r: int
    graphs: tuple[RMultigraph, ...] = ()

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("uniformity must be >= 1")
        for F in self.graphs:
            if F.r != self.r:
                raise ValueError(f"family member has uniformity {F.r}, expected {self.r}")
            if not F.simple:
                raise ValueError("forbidden graphs must be simple")

    @classmethod
    def of(cls, graphs: Iterable[RMultigraph], r: int | None = None) -> "ForbiddenFamily":
        graphs = tuple(graphs)
        if r is None:
            if not graphs:
                raise ValueError("an empty family needs an explicit uniformity")
            r = graphs[0].r
        return cls(r, graphs)


@dataclass
class ExtremalResult:
    n: int
    max_edges: int
    witness: RMultigraph
    nodes: int


def _copy_masks(n: int, r: int, family: ForbiddenFamily, index: dict) -> list[int]:
    masks = set()
    for F in family.graphs:
        if F.n > n:
            continue
        for image in permutations(range(n), F.n):
            mask = 0
            for e in F.edges:
                mask |= 1 << index[tuple(sorted(image[v] for v in e))]
            masks.add(mask)
    return sorted(masks)


def _search(N: int, closing: list[list[int]], upper: int, start_mask: int, start_count: int):
    """Depth-first search over edges start..N-1; returns (best count, best mask, nodes)."""
    best = [start_count, start_mask]
    nodes = 0
    first = start_mask.bit_length()

    def free(mask: int, i: int) -> bool:
        with_i = mask | (1 << i)
        return all(c & with_i != c for c in closing[i])

    def dfs(i: int, mask: int, count: int) -> bool:
        nonlocal nodes
        nodes += 1
        if count > best[0]:
            best[0], best[1] = count, mask
            if count >= upper:
                return True
        if i == N or count + (N - i) <= best[0]:
            return False
        if free(mask, i) and dfs(i + 1, mask | (1 << i), count + 1):
            return True
        return dfs(i + 1, mask, count)

    dfs(first, start_mask, start_count)
    return best[0], best[1], nodes


def _ex(n: int, family: ForbiddenFamily, guard: int, memo: dict) -> ExtremalResult:
    if n in memo:
        return memo[n]
    r = family.r
    universe = list(combinations(range(n), r))
    N = len(universe)
    if N > guard:
        raise GuardExceeded(f"C({n},{r}) = {N} edges exceed the guard {guard}")
    if any(F.e == 0 and F.n <= n for F in family.graphs):
        result = ExtremalResult(n, 0, RMultigraph(r, n, ()), 0)
        memo[n] = result
        return result
    index = {e: k for k, e in enumerate(universe)}
    masks = _copy_masks(n, r, family, index)
    closing = [[] for _ in range(N)]
    for m in masks:
        closing[m.bit_length() - 1].append(m)

    if N == 0 or 1 in masks:
        # every edge is equivalent to edge 0, so no edge can be used at all
        result = ExtremalResult(n, 0, RMultigraph(r, n, ()), 1)
        memo[n] = result
        return result

    # averaging over (n-1)-subsets: ex(n) <= ex(n-1) * n / (n - r)
    upper = N
    if n > r:
        upper = min(N, _ex(n - 1, family, guard, memo).max_edges * n // (n - r))
    # some optimal graph contains edge 0 after relabelling
    count, mask, nodes = _search(N, closing, upper, 1, 1)
    witness = RMultigraph(r, n, tuple(universe[k] for k in range(N) if mask >> k & 1))
    result = ExtremalResult(n, count, witness, nodes)
    memo[n] = result
    return result


def ex_brute(n: int, family: ForbiddenFamily, guard: int = PRUNED_GUARD) -> ExtremalResult:
    """Maximum number of edges of an r-graph on n vertices containing no member of ``family``.

    Exhaustive with pruning up to ``guard`` candidate edges (default 35).
    If no F-free graph with an edge exists the answer is 0 with the empty witness.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return _ex(n, family, guard, {})


def pi_sequence(
    family: ForbiddenFamily, n_min: int, n_max: int, guard: int = PRUNED_GUARD
) -> list[tuple[int, Fraction]]:
    """(n, ex(n, F) / C(n, r)) for n_min <= n <= n_max with n >= r."""
    r = family.r
    memo: dict = {}
    out = []
    for n in range(max(n_min, r), n_max + 1):
        out.append((n, Fraction(_ex(n, family, guard, memo).max_edges, comb(n, r))))
    return out
