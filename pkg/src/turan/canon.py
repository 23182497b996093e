"""Canonical labelling of small multigraphs.

Individualization-refinement search: vertex colours are refined by the
colour multisets of their edges, a vertex of the smallest non-trivial
colour cell is individualized, and the lexicographically smallest relabelled
edge list over all discrete leaves is the canonical form.  Branches are
skipped for vertices that are twins (their transposition is an automorphism)
of an already explored vertex, which keeps complete and empty parts cheap.
"""
from __future__ import annotations

from .errors import GuardExceeded
from .hypergraph import RMultigraph

CANON_GUARD = 16


def _rank(keys):
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(G: RMultigraph, colors: list[int], incident) -> list[int]:
    n_classes = len(set(colors))
    while True:
        sigs = []
        for v in range(G.n):
            around = []
            for e in incident[v]:
                rest = list(e)
                rest.remove(v)
                around.append(tuple(sorted(colors[u] for u in rest)))
            sigs.append((colors[v], tuple(sorted(around))))
        colors = _rank(sigs)
        k = len(set(colors))
        if k == n_classes:
            return colors
        n_classes = k


def _swap_preserves(G: RMultigraph, u: int, w: int, incident) -> bool:
    swap = {u: w, w: u}
    edges = G.edge_set
    for e in incident[u]:
        if tuple(sorted(swap.get(x, x) for x in e)) not in edges:
            return False
    return True


def canonical_form(G: RMultigraph, max_vertices: int = CANON_GUARD) -> tuple:
    """Return ``(r, n, edges)`` with edges relabelled canonically.

    Two graphs are isomorphic iff their canonical forms are equal.
    """
    if G.n > max_vertices:
        raise GuardExceeded(f"canonical form limited to {max_vertices} vertices, got {G.n}")
    incident = [[] for _ in range(G.n)]
    for e in G.edges:
        for v in set(e):
            for _ in range(e.count(v)):
                incident[v].append(e)
    best: list = []

    def leaf(colors):
        cand = tuple(sorted(tuple(sorted(colors[v] for v in e)) for e in G.edges))
        if not best or cand < best[0]:
            best[:] = [cand]

    def search(colors):
        colors = _refine(G, colors, incident)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        open_cells = [(len(vs), c) for c, vs in cells.items() if len(vs) > 1]
        if not open_cells:
            leaf(colors)
            return
        _, c = min(open_cells)
        reps: list[int] = []
        for v in cells[c]:
            if any(_swap_preserves(G, v, u, incident) for u in reps):
                continue
            reps.append(v)
            search(_rank([(colors[u], u != v) for u in range(G.n)]))

    search([0] * G.n)
    return (G.r, G.n, best[0] if best else ())


def is_isomorphic(G: RMultigraph, H: RMultigraph, max_vertices: int = CANON_GUARD) -> bool:
    if (G.r, G.n, G.e) != (H.r, H.n, H.e):
        return False
    if sorted(G.degrees()) != sorted(H.degrees()):
        return False
    return canonical_form(G, max_vertices) == canonical_form(H, max_vertices)
