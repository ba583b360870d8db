"""Hypergraph and graph constructions with role labels.

Label conventions (role -> vertex id):

* ``construct_h1`` / ``construct_h2``: ``a1..a{n/2}`` are ``0..n/2-1`` and
  ``b1..b{n/2}`` are ``n/2..n-1``.
* ``construct_turan``: ``V{i}_{j}`` is the j-th vertex of part i (1-based),
  parts laid out contiguously, larger parts first.
* ``blowup``: ``v{i}_{l}`` is local vertex l of the fiber over base vertex i
  (0-based), fibers laid out contiguously in base order.
* ``split_construction``: an A-vertex ``a`` becomes ``a{a}_1``, ``a{a}_2``;
  a B-vertex ``b`` keeps the label ``b{b}``.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Optional

from .core import Graph, Hypergraph, shadow
from .embed import BlowupSpec


@dataclass(frozen=True)
class LabeledConstruction:
    hypergraph: Hypergraph
    labels: dict[str, int]

    def __post_init__(self):
        if sorted(self.labels.values()) != list(range(self.hypergraph.n)):
            raise ValueError("labels must be a bijection onto the vertex set")

    def vertex(self, role: str) -> int:
        return self.labels[role]


def _ab_labels(n: int) -> dict[str, int]:
    half = n // 2
    labels = {f"a{i + 1}": i for i in range(half)}
    labels.update({f"b{j + 1}": half + j for j in range(half)})
    return labels


def construct_h1(n: int) -> LabeledConstruction:
    """Triples ``{a_i, b_j, b_{j+1}}`` for odd ``j``; needs ``n % 4 == 0``."""
    if n < 4 or n % 4:
        raise ValueError(f"H1 needs n divisible by 4, got {n}")
    labels = _ab_labels(n)
    half = n // 2
    edges = [(labels[f"a{i}"], labels[f"b{j}"], labels[f"b{j + 1}"])
             for i in range(1, half + 1) for j in range(1, half, 2)]
    return LabeledConstruction(Hypergraph(n, tuple(edges), frozenset({3})), labels)


def construct_h2(n: int) -> LabeledConstruction:
    """Triples ``{b_1, a_i, b_j}`` for every ``a_i`` and every ``b_j != b_1``."""
    if n < 4 or n % 2:
        raise ValueError(f"H2 needs an even n >= 4, got {n}")
    labels = _ab_labels(n)
    half = n // 2
    b1 = labels["b1"]
    edges = [(b1, labels[f"a{i}"], labels[f"b{j}"])
             for i in range(1, half + 1) for j in range(2, half + 1)]
    return LabeledConstruction(Hypergraph(n, tuple(edges), frozenset({3})), labels)


def equitable_parts(n: int, t: int) -> list[list[int]]:
    sizes = [n // t + (1 if i < n % t else 0) for i in range(t)]
    parts, start = [], 0
    for s in sizes:
        parts.append(list(range(start, start + s)))
        start += s
    return parts


def construct_turan(n: int, k: int, t: int) -> LabeledConstruction:
    """All k-sets meeting each of ``t`` equitable parts at most once.

    The shadow is the Turan graph T(n, t), so the hypergraph has no Berge
    copy of any graph with chromatic number above ``t``.
    """
    if k < 2:
        raise ValueError(f"uniformity k={k} must be at least 2")
    if t < k:
        raise ValueError(f"need t >= k, got t={t}, k={k}")
    if n < 0:
        raise ValueError(f"negative n={n}")
    parts = equitable_parts(n, t)
    labels = {f"V{i + 1}_{j + 1}": v for i, part in enumerate(parts) for j, v in enumerate(part)}
    edges = []
    for chosen in combinations([p for p in parts if p], k):
        edges.extend(product(*chosen))
    return LabeledConstruction(Hypergraph(n, tuple(edges), frozenset({k})), labels)


def _fiber_offsets(spec: BlowupSpec) -> list[int]:
    offsets, start = [], 0
    for s in spec.sizes:
        offsets.append(start)
        start += s
    return offsets


def blowup(spec: BlowupSpec) -> Graph:
    """Replace base vertices by independent fibers.

    Ordinary base edges become complete bipartite graphs; an edge in
    ``spec.matching`` becomes the matching pairing equal local indices, of
    size ``min(s_i, s_j)``.
    """
    off = _fiber_offsets(spec)
    edges = []
    for i, j in spec.base.edges:
        if (i, j) in spec.matching:
            edges.extend((off[i] + l, off[j] + l) for l in range(min(spec.sizes[i], spec.sizes[j])))
        else:
            edges.extend((off[i] + a, off[j] + b)
                         for a in range(spec.sizes[i]) for b in range(spec.sizes[j]))
    return Graph(sum(spec.sizes), edges)


def blowup_labels(spec: BlowupSpec) -> dict[str, int]:
    off = _fiber_offsets(spec)
    return {f"v{i}_{l}": off[i] + l for i, s in enumerate(spec.sizes) for l in range(s)}


def bipartition(G: Graph) -> Optional[tuple[list[int], list[int]]]:
    """Two-coloring by BFS (each component's smallest vertex gets side 0), or ``None``."""
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.neighbors(u):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return ([v for v in range(G.n) if color[v] == 0],
            [v for v in range(G.n) if color[v] == 1])


def split_construction(Hprime: Graph, parts: Optional[tuple[list[int], list[int]]] = None
                       ) -> LabeledConstruction:
    """Double every A-vertex of a bipartite graph and turn each edge ``ab``
    into the triple ``{a_1, a_2, b}``."""
    if parts is None:
        parts = bipartition(Hprime)
        if parts is None:
            raise ValueError("input graph is not bipartite")
    A, B = sorted(parts[0]), sorted(parts[1])
    if sorted(A + B) != list(range(Hprime.n)):
        raise ValueError("parts must partition the vertex set")
    side = {v: 0 for v in A} | {v: 1 for v in B}
    for u, v in Hprime.edges:
        if side[u] == side[v]:
            raise ValueError(f"edge {(u, v)} lies inside one part")
    labels: dict[str, int] = {}
    for k, a in enumerate(A):
        labels[f"a{a}_1"] = 2 * k
        labels[f"a{a}_2"] = 2 * k + 1
    for k, b in enumerate(B):
        labels[f"b{b}"] = 2 * len(A) + k
    edges = []
    for u, v in Hprime.edges:
        a, b = (u, v) if side[u] == 0 else (v, u)
        edges.append((labels[f"a{a}_1"], labels[f"a{a}_2"], labels[f"b{b}"]))
    H = Hypergraph(2 * len(A) + len(B), tuple(edges), frozenset({3}))
    return LabeledConstruction(H, labels)


def _keep_probability(size: int, m: int) -> Fraction:
    # chance that a fixed pair of a size-`size` edge survives a uniform m-subset
    return Fraction(comb(size - 2, m - 2), comb(size, m))


def expected_shrunk_shadow(H: Hypergraph, m: int) -> Fraction:
    """Expected shadow size after shrinking every hyperedge to a uniform random m-subset."""
    miss: dict[tuple[int, int], Fraction] = {}
    for e in H.edges:
        q = _keep_probability(len(e), m)
        for p in combinations(e, 2):
            miss[p] = miss.get(p, Fraction(1)) * (1 - q)
    return sum((1 - x for x in miss.values()), Fraction(0))


def shrink(H: Hypergraph, m: int, mode: str = "derandomized", seed: Optional[int] = None) -> Hypergraph:
    """Shrink every hyperedge to an m-subset of itself.

    ``mode="seeded"`` draws each subset uniformly with ``random.Random(seed)``.
    ``mode="derandomized"`` walks the hyperedges in index order and fixes,
    for each, the m-subset maximizing the exact conditional expectation of
    the final shadow size (lexicographically least among ties), so the
    result has at least ``expected_shrunk_shadow(H, m)`` shadow edges.
    """
    min_size = min((len(e) for e in H.edges), default=min(H.R, default=m))
    if m < 2 or m > min_size:
        raise ValueError(f"m={m} must satisfy 2 <= m <= {min_size}")
    if mode == "seeded":
        rng = random.Random(seed)
        chosen = [tuple(sorted(rng.sample(e, m))) for e in H.edges]
    elif mode == "derandomized":
        chosen = _shrink_derandomized(H, m)
    else:
        raise ValueError(f"unknown shrink mode {mode!r}")
    return Hypergraph(H.n, tuple(chosen), frozenset({m}))


def _shrink_derandomized(H: Hypergraph, m: int) -> list[tuple[int, ...]]:
    # per pair: product of the nonzero miss factors of still-random hyperedges,
    # plus how many still-random hyperedges keep the pair surely (factor 0)
    miss: dict[tuple[int, int], Fraction] = {}
    sure: dict[tuple[int, int], int] = {}
    for e in H.edges:
        q = _keep_probability(len(e), m)
        for p in combinations(e, 2):
            if q == 1:
                sure[p] = sure.get(p, 0) + 1
            else:
                miss[p] = miss.get(p, Fraction(1)) * (1 - q)
    hit: set[tuple[int, int]] = set()
    chosen = []
    for e in H.edges:
        q = _keep_probability(len(e), m)
        for p in combinations(e, 2):
            if q == 1:
                sure[p] -= 1
            else:
                miss[p] /= 1 - q
        best, best_gain = None, None
        for S in combinations(e, m):
            # gain in expectation from covering S's pairs now
            gain = sum((miss.get(p, Fraction(1)) for p in combinations(S, 2)
                        if p not in hit and not sure.get(p)), Fraction(0))
            if best_gain is None or gain > best_gain:
                best, best_gain = S, gain
        chosen.append(best)
        hit.update(combinations(best, 2))
    return chosen


def shrink_bound(H: Hypergraph, m: int) -> Fraction:
    """Guaranteed shadow size ``C(m,2)/C(M,2) * |shadow(H)|`` with ``M = max(R)``."""
    M = max(H.R) if H.R else m
    return Fraction(comb(m, 2), comb(M, 2)) * shadow(H).m
