"""Graph products whose Lagrangians follow closed-form laws.

Binary products place the left graph on vertices ``0 .. v(G)-1`` and the
right graph after it, except the strong product, which lives on the grid
``V(G) x V(H)`` with vertex ``(i, v)`` numbered ``i * v(H) + v``.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement, product
from typing import Sequence

from .hypergraph import RMultigraph, _normalized


def _same_uniformity(G: RMultigraph, H: RMultigraph) -> None:
    if G.r != H.r:
        raise ValueError(f"uniformity mismatch: {G.r} vs {H.r}")


def _require_simple(*graphs: RMultigraph) -> None:
    for G in graphs:
        if not G.simple:
            raise ValueError("this construction is defined for simple graphs only")


def _shift(edge, k):
    return tuple(v + k for v in edge)


def star_product(G: RMultigraph, H: RMultigraph) -> RMultigraph:
    """(r+s)-graph on V(G) + V(H) whose edges are unions of a G-edge and an H-edge."""
    a = G.n
    edges = (e + _shift(f, a) for e in G.edges for f in H.edges)
    return RMultigraph(G.r + H.r, G.n + H.n, tuple(sorted(edges)))


def _crossing(a: int, b: int, r: int, multisets: bool):
    pool = combinations_with_replacement if multisets else combinations
    return (e for e in pool(range(a + b), r) if e[0] < a <= e[-1])


def oplus_join(G: RMultigraph, H: RMultigraph) -> RMultigraph:
    """E(G) + E(H) plus every r-multiset meeting both vertex sets."""
    _same_uniformity(G, H)
    a = G.n
    edges = list(G.edges) + [_shift(f, a) for f in H.edges]
    edges.extend(_crossing(a, H.n, G.r, multisets=True))
    return _normalized(G.r, G.n + H.n, edges)


def cross_product(G: RMultigraph, H: RMultigraph) -> RMultigraph:
    """E(G) + E(H) plus every r-set meeting both vertex sets."""
    _same_uniformity(G, H)
    _require_simple(G, H)
    a = G.n
    edges = list(G.edges) + [_shift(f, a) for f in H.edges]
    edges.extend(_crossing(a, H.n, G.r, multisets=False))
    return _normalized(G.r, G.n + H.n, edges)


def strong_product(G: RMultigraph, H: RMultigraph) -> RMultigraph:
    """Hypergraph strong product on the grid V(G) x V(H).

    An H-edge contributes every r-set with one vertex in each of its rows
    (any copy index per row); a G-edge contributes every r-set with one
    vertex in each of its copies (any H-vertex per copy).
    """
    _same_uniformity(G, H)
    _require_simple(G, H)
    r, n, m = G.r, G.n, H.n
    edges = set()
    for h in H.edges:
        for copies in product(range(n), repeat=r):
            edges.add(tuple(sorted(i * m + v for i, v in zip(copies, h))))
    for e in G.edges:
        for rows in product(range(m), repeat=r):
            edges.add(tuple(sorted(i * m + v for i, v in zip(e, rows))))
    return RMultigraph(r, n * m, tuple(sorted(edges)))


def strong_power(G: RMultigraph, k: int) -> RMultigraph:
    """Left-associated k-fold strong product of ``G`` with itself."""
    if k < 1:
        raise ValueError(f"power must be >= 1, got {k}")
    out = G
    for _ in range(k - 1):
        out = strong_product(out, G)
    return out


def product_point(a: Sequence, b: Sequence) -> list:
    """Grid point with weight ``a[i] * b[v]`` on vertex ``(i, v)`` of a strong product."""
    return [ai * bv for ai in a for bv in b]


def circ_product(G: RMultigraph, H: RMultigraph) -> RMultigraph:
    """(r+s)-multigraph: G-edges completed by any s-multiset of V(H), and symmetrically."""
    a = G.n
    right = [_shift(f, a) for f in combinations_with_replacement(range(H.n), H.r)]
    left = list(combinations_with_replacement(range(a), G.r))
    edges = [e + f for e in G.edges for f in right]
    edges += [e + _shift(f, a) for e in left for f in H.edges]
    return _normalized(G.r + H.r, G.n + H.n, edges)


def j_augment(G: RMultigraph) -> RMultigraph:
    """Add an apex vertex ``v(G)`` joined to every (r-1)-multiset of V(G)."""
    if G.r < 2:
        raise ValueError("apex augmentation needs uniformity >= 2")
    apex = G.n
    edges = list(G.edges)
    edges.extend(e + (apex,) for e in combinations_with_replacement(range(G.n), G.r - 1))
    return _normalized(G.r, G.n + 1, edges)
