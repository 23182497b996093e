"""Uniform multigraphs with multiset edges.

An edge of an r-multigraph is stored as a sorted tuple of ``r`` vertex ids,
with repetition: ``(0, 0, 2)`` is the multiset {0, 0, 2}.  Vertices are the
contiguous integers ``0 .. n-1``.  Graphs are immutable; every operation
returns a new graph.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement, product
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

from .errors import GuardExceeded

Edge = tuple[int, ...]

EMBEDDING_GUARD = 12


@dataclass(frozen=True)
class RMultigraph:
    """An r-uniform multigraph on vertices ``0 .. n-1``.

    Build instances with :func:`make_graph`, which normalizes the edge list.
    Direct construction expects sorted, duplicate-free edges and checks that.
    """

    r: int
    n: int
    edges: tuple[Edge, ...]
    simple: bool = field(init=False, compare=False)

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"uniformity must be >= 1, got {self.r}")
        if self.n < 0:
            raise ValueError(f"vertex count must be >= 0, got {self.n}")
        simple = True
        prev = None
        for e in self.edges:
            if len(e) != self.r:
                raise ValueError(f"edge {e} does not have size {self.r}")
            if e and (e[0] < 0 or e[-1] >= self.n):
                raise ValueError(f"edge {e} references a vertex outside 0..{self.n - 1}")
            if any(e[i] > e[i + 1] for i in range(len(e) - 1)):
                raise ValueError(f"edge {e} is not sorted")
            if prev is not None and e <= prev:
                raise ValueError("edges must be sorted and duplicate-free")
            if simple and len(set(e)) != len(e):
                simple = False
            prev = e
        object.__setattr__(self, "simple", simple)

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self.edge_set

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def __repr__(self):
        kind = "graph" if self.simple else "multigraph"
        return f"RMultigraph(r={self.r}, n={self.n}, e={self.e}, {kind})"


@dataclass(frozen=True)
class EmbeddingMap:
    """A vertex map ``assignment[i]`` from a source graph into a target graph."""

    assignment: tuple[int, ...]
    injective: bool


def multiplicities(edge: Edge) -> list[tuple[int, int]]:
    """Return the multiset ``edge`` as sorted (vertex, multiplicity) pairs."""
    return sorted(Counter(edge).items())


def _normalized(r: int, n: int, edges: Iterable[Sequence[int]]) -> RMultigraph:
    return RMultigraph(r, n, tuple(sorted({tuple(sorted(e)) for e in edges})))


def make_graph(r: int, n: int, edges: Iterable[Sequence[int]] = ()) -> RMultigraph:
    """Build a normalized r-multigraph on ``n`` vertices.

    Each edge is any sequence of ``r`` vertex ids (repetition allowed).
    Duplicate edges collapse to one.
    """
    if r < 1:
        raise ValueError(f"uniformity must be >= 1, got {r}")
    if n < 0:
        raise ValueError(f"vertex count must be >= 0, got {n}")
    clean = []
    for e in edges:
        e = tuple(sorted(int(v) for v in e))
        if len(e) != r:
            raise ValueError(f"edge {e} has size {len(e)}, expected {r}")
        if e[0] < 0 or e[-1] >= n:
            raise ValueError(f"edge {e} references a vertex outside 0..{n - 1}")
        clean.append(e)
    return _normalized(r, n, clean)


def empty_graph(n: int, r: int = 2) -> RMultigraph:
    return RMultigraph(r, n, ())


def complete_graph(t: int, r: int = 2) -> RMultigraph:
    """The complete simple r-graph K_t^r."""
    return RMultigraph(r, t, tuple(combinations(range(t), r)))


def single_edge(r: int) -> RMultigraph:
    return complete_graph(r, r)


def cycle_graph(n: int) -> RMultigraph:
    return make_graph(2, n, [(i, (i + 1) % n) for i in range(n)])


def multiset_count(n: int, r: int) -> int:
    """Number of r-multisets on n points."""
    return comb(n + r - 1, r) if n > 0 else int(r == 0)


def complement(G: RMultigraph) -> RMultigraph:
    """Complement against the universe of all r-multisets of V(G)."""
    universe = combinations_with_replacement(range(G.n), G.r)
    edges = G.edge_set
    return RMultigraph(G.r, G.n, tuple(e for e in universe if e not in edges))


def disjoint_union(G: RMultigraph, H: RMultigraph) -> RMultigraph:
    if G.r != H.r:
        raise ValueError(f"uniformity mismatch: {G.r} vs {H.r}")
    shifted = (tuple(v + G.n for v in e) for e in H.edges)
    return RMultigraph(G.r, G.n + H.n, G.edges + tuple(shifted))


def relabel(G: RMultigraph, perm: Sequence[int]) -> RMultigraph:
    """Graph with vertex ``v`` renamed to ``perm[v]``; ``perm`` must be a permutation."""
    if sorted(perm) != list(range(G.n)):
        raise ValueError("relabel needs a permutation of the vertex set")
    return _normalized(G.r, G.n, ([perm[v] for v in e] for e in G.edges))


def blow_up(G: RMultigraph, sizes: Sequence[int]) -> RMultigraph:
    """Simple r-graph whose r-sets are edges iff their part profile is an edge of ``G``.

    Vertex ``i`` of ``G`` becomes a part of ``sizes[i]`` consecutive vertices.
    """
    if len(sizes) != G.n:
        raise ValueError(f"need {G.n} part sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    out = []
    for e in G.edges:
        choices = [
            combinations(range(offsets[v], offsets[v + 1]), m) for v, m in multiplicities(e)
        ]
        for pick in product(*choices):
            out.append(tuple(sorted(v for block in pick for v in block)))
    out.sort()
    return RMultigraph(G.r, offsets[-1], tuple(out))


def induced(G: RMultigraph, U: Iterable[int]) -> RMultigraph:
    """Induced subgraph on ``U``, relabelled in increasing vertex order."""
    U = sorted(set(U))
    if U and (U[0] < 0 or U[-1] >= G.n):
        raise ValueError("vertex subset out of range")
    index = {v: i for i, v in enumerate(U)}
    edges = [tuple(index[v] for v in e) for e in G.edges if all(v in index for v in e)]
    return RMultigraph(G.r, len(U), tuple(sorted(edges)))


def is_subgraph(H: RMultigraph, G: RMultigraph) -> bool:
    """True when H and G share the vertex labelling and E(H) is contained in E(G)."""
    return H.r == G.r and H.n <= G.n and H.edge_set <= G.edge_set


def is_homomorphism(F: RMultigraph, G: RMultigraph, assignment: Sequence[int]) -> bool:
    if F.r != G.r or len(assignment) != F.n:
        return False
    if any(not 0 <= a < G.n for a in assignment):
        return False
    target = G.edge_set
    return all(tuple(sorted(assignment[v] for v in e)) in target for e in F.edges)


def find_embedding(
    F: RMultigraph,
    G: RMultigraph,
    injective: bool = True,
    max_vertices: int = EMBEDDING_GUARD,
) -> EmbeddingMap | None:
    """Backtracking search for a homomorphism (or embedding) of F into G.

    Returns a witness map, or None when no such map exists.
    """
    if F.r != G.r:
        raise ValueError(f"uniformity mismatch: {F.r} vs {G.r}")
    if F.n > max_vertices:
        raise GuardExceeded(f"source graph has {F.n} vertices, guard is {max_vertices}")
    if F.n == 0:
        return EmbeddingMap((), injective)
    if injective and F.n > G.n:
        return None

    # Visit high-degree vertices first, then grow along shared edges.
    deg = F.degrees()
    order: list[int] = []
    remaining = set(range(F.n))
    while remaining:
        placed = set(order)
        def key(v):
            touch = sum(1 for e in F.edges if v in e and placed.intersection(e))
            return (-touch, -deg[v], v)
        v = min(remaining, key=key)
        order.append(v)
        remaining.remove(v)
    position = {v: i for i, v in enumerate(order)}
    closing: list[list[Edge]] = [[] for _ in order]
    for e in F.edges:
        closing[max(position[v] for v in e)].append(e)

    target = G.edge_set
    assign = [-1] * F.n
    used = [False] * G.n

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for w in range(G.n):
            if injective and used[w]:
                continue
            assign[v] = w
            if all(tuple(sorted(assign[u] for u in e)) in target for e in closing[k]):
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
        assign[v] = -1
        return False

    if extend(0):
        return EmbeddingMap(tuple(assign), injective)
    return None


def contains(G: RMultigraph, F: RMultigraph) -> bool:
    """True when F embeds injectively into G."""
    return find_embedding(F, G, injective=True) is not None


# -- text format -------------------------------------------------------------

def format_graph(G: RMultigraph) -> str:
    """Serialize as a header line ``r n`` followed by one edge per line."""
    lines = [f"{G.r} {G.n}"]
    lines.extend(" ".join(map(str, e)) for e in G.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> RMultigraph:
    """Parse the text format produced by :func:`format_graph`.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise ValueError(f"malformed line {raw!r}") from exc
    if not rows:
        raise ValueError("missing header line 'r n'")
    header, body = rows[0], rows[1:]
    if len(header) != 2:
        raise ValueError(f"header must be 'r n', got {header}")
    return make_graph(header[0], header[1], body)


def read_graph(path) -> RMultigraph:
    return parse_graph(Path(path).read_text())


def write_graph(G: RMultigraph, path) -> None:
    Path(path).write_text(format_graph(G))
