"""Graphs, hypergraphs, shadows and co-degrees.

Vertices are the dense integers ``0..n-1``.  Graph adjacency is kept as one
int bitmask per vertex; each hyperedge is a sorted vertex tuple plus a bitmask.
Both types are immutable once built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable

Pair = tuple[int, int]


def _pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1``.

    Edges are normalized to ``(u, v)`` with ``u < v``, deduplicated and
    sorted.  Self-loops and out-of-range endpoints raise ``ValueError``.
    """

    n: int
    edges: tuple[Pair, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {tuple(e)} out of range for n={self.n}")
            norm.add(_pair(u, v))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    @cached_property
    def edge_set(self) -> frozenset[Pair]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    @property
    def m(self) -> int:
        return len(self.edges)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabeled to ``0..len(vertices)-1`` in given order."""
        keep = list(vertices)
        index = {v: i for i, v in enumerate(keep)}
        return Graph(len(keep), [(index[u], index[v]) for u, v in self.edges
                                 if u in index and v in index])

    def remove_vertex(self, v: int) -> "Graph":
        return self.induced(w for w in range(self.n) if w != v)

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def is_complete(self) -> bool:
        return self.m == comb(self.n, 2)


@dataclass(frozen=True)
class Hypergraph:
    """Family of distinct vertex subsets of ``0..n-1`` with uniformity set ``R``.

    Edges are stored as sorted tuples, deduplicated, in lexicographic order,
    so hyperedge indices are stable across equal hypergraphs.  When ``R`` is
    omitted it is the set of edge sizes present.
    """

    n: int
    edges: tuple[tuple[int, ...], ...] = ()
    R: frozenset[int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        norm = set()
        for e in self.edges:
            e = tuple(e)
            t = tuple(sorted(set(e)))
            if len(t) != len(e):
                raise ValueError(f"hyperedge {tuple(e)} repeats a vertex")
            if len(t) < 2:
                raise ValueError(f"hyperedge {t} has fewer than 2 vertices")
            if t[0] < 0 or t[-1] >= self.n:
                raise ValueError(f"hyperedge {t} out of range for n={self.n}")
            norm.add(t)
        edges = tuple(sorted(norm))
        R = frozenset(len(e) for e in edges) if self.R is None else frozenset(self.R)
        for e in edges:
            if len(e) not in R:
                raise ValueError(f"hyperedge {e} has size {len(e)} not in R={sorted(R)}")
        if any(r < 2 for r in R):
            raise ValueError(f"R={sorted(R)} contains a size below 2")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "R", R)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in e) for e in self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return Hypergraph(self.n, tuple(tuple(e) for e in edges), self.R)

    def relabel(self, perm: list[int]) -> "Hypergraph":
        return Hypergraph(self.n, tuple(tuple(perm[v] for v in e) for e in self.edges), self.R)


@dataclass(frozen=True)
class ShadowGraph:
    """The 2-shadow of a hypergraph with, per pair, the covering hyperedge indices."""

    graph: Graph
    covering: dict[Pair, tuple[int, ...]]

    @property
    def m(self) -> int:
        return self.graph.m


def shadow(H: Hypergraph) -> ShadowGraph:
    cover: dict[Pair, list[int]] = {}
    for idx, e in enumerate(H.edges):
        for p in combinations(e, 2):
            cover.setdefault(p, []).append(idx)
    covering = {p: tuple(ids) for p, ids in sorted(cover.items())}
    return ShadowGraph(Graph(H.n, list(covering)), covering)


def shadow_size(H: Hypergraph) -> int:
    return len({p for e in H.edges for p in combinations(e, 2)})


def codegree(H: Hypergraph, S: Iterable[int]) -> int:
    """Number of hyperedges containing every vertex of ``S``."""
    mask = 0
    for v in S:
        if not 0 <= v < H.n:
            raise ValueError(f"vertex {v} out of range for n={H.n}")
        mask |= 1 << v
    return sum(1 for hm in H.masks if hm & mask == mask)


def min_s_degree(H: Hypergraph, s: int) -> int:
    """Minimum co-degree over all ``s``-subsets of the vertex set."""
    if s < 0 or s > H.n:
        raise ValueError(f"s={s} outside 0..{H.n}")
    if s == 2:
        if H.n < 2:
            return 0
        if shadow_size(H) < comb(H.n, 2):
            return 0
        cover = shadow(H).covering
        return min(len(ids) for ids in cover.values())
    return min(codegree(H, S) for S in combinations(range(H.n), s))


def is_covering(H: Hypergraph) -> bool:
    """True iff every vertex pair lies in some hyperedge."""
    if H.n < 2:
        return True
    by_codegree = min_s_degree(H, 2) >= 1
    by_shadow = shadow(H).graph.is_complete()
    assert by_codegree == by_shadow
    return by_codegree


def uniquely_embedded_pairs(H: Hypergraph) -> set[Pair]:
    """Shadow pairs lying in exactly one hyperedge."""
    return {p for p, ids in shadow(H).covering.items() if len(ids) == 1}


def reduce_edge_minimal(H: Hypergraph) -> Hypergraph:
    """Drop redundant hyperedges while keeping the shadow unchanged.

    Hyperedges are scanned from the highest index down; one is removed when
    every pair it covers is still covered by another surviving hyperedge.
    Every hyperedge of the result owns a pair of co-degree 1.
    """
    count: dict[Pair, int] = {}
    for e in H.edges:
        for p in combinations(e, 2):
            count[p] = count.get(p, 0) + 1
    keep = [True] * H.m
    for idx in range(H.m - 1, -1, -1):
        pairs = list(combinations(H.edges[idx], 2))
        if all(count[p] >= 2 for p in pairs):
            keep[idx] = False
            for p in pairs:
                count[p] -= 1
    return H.with_edges(e for e, k in zip(H.edges, keep) if k)


def is_edge_minimal(H: Hypergraph) -> bool:
    uniq = uniquely_embedded_pairs(H)
    return all(any(p in uniq for p in combinations(e, 2)) for e in H.edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, list(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices."""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)
