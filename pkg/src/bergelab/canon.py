"""Canonical labeling of small graphs and hypergraphs.

Color refinement on the vertex/edge incidence structure followed by an
individualization tree; the canonical labeling is the leaf whose relabeled
sorted edge list is lexicographically least.  Vertices that can be swapped
by a transposition automorphism (twins) are individualized only once.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence, Union

from .core import Graph, Hypergraph, bits

CANON_CAP = 10

EdgeKey = tuple[tuple[int, ...], ...]


def _refine(n: int, inc: list[list[int]], edge_verts: list[list[int]], colors: list[int]) -> list[int]:
    while True:
        sigs = []
        for v in range(n):
            around = sorted(tuple(sorted(colors[w] for w in edge_verts[e] if w != v)) for e in inc[v])
            sigs.append((colors[v], tuple(around)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def canonical_labeling(n: int, edges: Sequence[Sequence[int]]) -> tuple[EdgeKey, list[int]]:
    """Least relabeled edge list over the individualization tree, and the
    permutation (old vertex -> new vertex) producing it."""
    edge_verts = [list(e) for e in edges]
    masks = {sum(1 << v for v in e) for e in edge_verts}
    inc: list[list[int]] = [[] for _ in range(n)]
    for idx, e in enumerate(edge_verts):
        for v in e:
            inc[v].append(idx)

    def swapped(mask: int, u: int, v: int) -> int:
        if (mask >> u ^ mask >> v) & 1:
            return mask ^ (1 << u | 1 << v)
        return mask

    def twins(u: int, v: int) -> bool:
        return all(swapped(m, u, v) in masks for m in masks)

    best: list = [None, None]

    def explore(colors: list[int]) -> None:
        colors = _refine(n, inc, edge_verts, colors)
        if len(set(colors)) == n:
            key = tuple(sorted(tuple(sorted(colors[v] for v in e)) for e in edge_verts))
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, colors
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        cell = [v for v in range(n) if colors[v] == target]
        reps: list[int] = []
        for v in cell:
            if not any(twins(r, v) for r in reps):
                reps.append(v)
        for v in reps:
            keyed = [(colors[w], 1 if colors[w] == target and w != v else 0) for w in range(n)]
            order = {k: i for i, k in enumerate(sorted(set(keyed)))}
            explore([order[k] for k in keyed])

    explore([0] * n)
    if n == 0:
        return (), []
    return best[0], best[1]


def graph_key(G: Graph) -> EdgeKey:
    return canonical_labeling(G.n, G.edges)[0]


def hypergraph_key(H: Hypergraph) -> EdgeKey:
    return canonical_labeling(H.n, H.edges)[0]


def canonical_graph(G: Graph) -> Graph:
    key, perm = canonical_labeling(G.n, G.edges)
    return Graph(G.n, [tuple(e) for e in key])


def canonical_hypergraph(H: Hypergraph) -> Hypergraph:
    key, perm = canonical_labeling(H.n, H.edges)
    return Hypergraph(H.n, key, H.R)


def canonical_form(obj: Union[Graph, Hypergraph]) -> bytes:
    """Byte string equal for two objects exactly when they are isomorphic.

    Graphs encode as graph6 of the canonical relabeling; hypergraphs as
    ``n``, ``R`` and the canonical edge list.
    """
    from .formats import graph_to_graph6

    if obj.n > CANON_CAP:
        raise ValueError(f"canonical_form supports at most {CANON_CAP} vertices, got {obj.n}")
    if isinstance(obj, Graph):
        return graph_to_graph6(canonical_graph(obj)).encode("ascii")
    key = hypergraph_key(obj)
    body = ";".join(",".join(map(str, e)) for e in key)
    return f"H{obj.n}|{','.join(map(str, sorted(obj.R)))}|{body}".encode("ascii")


def graph_classes(n: int) -> list[Graph]:
    """One canonical representative per isomorphism class of graphs on ``n`` vertices.

    Built edge by edge: the classes with ``m + 1`` edges are the distinct
    canonical forms of the ``m``-edge classes plus one non-edge.
    """
    if n > CANON_CAP:
        raise ValueError(f"graph_classes supports at most {CANON_CAP} vertices, got {n}")
    pairs = list(combinations(range(n), 2))
    level = {(): Graph(n)}
    out = list(level.values())
    for _ in pairs:
        nxt: dict[EdgeKey, Graph] = {}
        for G in level.values():
            present = G.edge_set
            for p in pairs:
                if p in present:
                    continue
                key = graph_key(Graph(n, G.edges + (p,)))
                if key not in nxt:
                    nxt[key] = Graph(n, [tuple(e) for e in key])
        if not nxt:
            break
        out.extend(nxt.values())
        level = nxt
    return out


def graph_key_from_masks(n: int, masks: Sequence[int]) -> EdgeKey:
    return canonical_labeling(n, [bits(m) for m in masks])[0]
