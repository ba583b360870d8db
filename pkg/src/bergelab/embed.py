"""Berge-G containment, plain subgraph containment and blowup containment."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import Graph, Hypergraph, bits


class Unknown:
    """Result of a search that ran out of budget before deciding."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNKNOWN"

    def __bool__(self):
        return False


UNKNOWN = Unknown()


class BudgetExhausted(Exception):
    pass


@dataclass
class Budget:
    """Wall-clock and node limits shared by one search invocation.

    ``None`` means unlimited.  ``nodes_used`` accumulates across calls that
    share the instance, which lets a caller meter a whole batch of searches.
    """

    seconds: Optional[float] = None
    nodes: Optional[int] = None
    nodes_used: int = 0
    _deadline: Optional[float] = field(default=None, repr=False)

    def start(self) -> "Budget":
        if self.seconds is not None and self._deadline is None:
            self._deadline = time.monotonic() + self.seconds
        return self

    def tick(self) -> None:
        self.nodes_used += 1
        if self.nodes is not None and self.nodes_used > self.nodes:
            raise BudgetExhausted
        if self._deadline is not None and self.nodes_used & 255 == 0:
            if time.monotonic() > self._deadline:
                raise BudgetExhausted


@dataclass(frozen=True)
class BergeEmbedding:
    """Certificate of a Berge copy: ``i`` maps G-vertices to H-vertices,
    ``f`` maps G-edge indices (positions in ``G.edges``) to hyperedge indices."""

    i: dict[int, int]
    f: dict[int, int]

    def to_json(self) -> dict:
        return {"i": {str(k): v for k, v in sorted(self.i.items())},
                "f": {str(k): v for k, v in sorted(self.f.items())}}

    @classmethod
    def from_json(cls, obj: dict) -> "BergeEmbedding":
        return cls({int(k): int(v) for k, v in obj["i"].items()},
                   {int(k): int(v) for k, v in obj["f"].items()})


def verify_embedding(H: Hypergraph, G: Graph, emb: BergeEmbedding) -> bool:
    i, f = emb.i, emb.f
    if set(i) != set(range(G.n)) or set(f) != set(range(G.m)):
        return False
    if len(set(i.values())) != len(i) or len(set(f.values())) != len(f):
        return False
    if any(not 0 <= x < H.n for x in i.values()):
        return False
    if any(not 0 <= h < H.m for h in f.values()):
        return False
    for idx, (u, v) in enumerate(G.edges):
        h = H.edges[f[idx]]
        if i[u] not in h or i[v] not in h:
            return False
    return True


def _degree_order(G: Graph) -> list[int]:
    return sorted(range(G.n), key=lambda v: (-G.degree(v), v))


class _BergeSearch:
    def __init__(self, H: Hypergraph, G: Graph, budget: Budget):
        self.H, self.G, self.budget = H, G, budget
        n = H.n
        self.cover = [[0] * n for _ in range(n)]
        self.sh_adj = [0] * n
        self.hdeg = [0] * n
        for idx, e in enumerate(H.edges):
            bit = 1 << idx
            for a in e:
                self.hdeg[a] += 1
                for b in e:
                    if a != b:
                        self.cover[a][b] |= bit
                        self.sh_adj[a] |= 1 << b
        self.order = _degree_order(G)
        self.inc: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
        for idx, (u, v) in enumerate(G.edges):
            self.inc[u].append((idx, v))
            self.inc[v].append((idx, u))

    def run(self, pre: dict[int, int], pre_match: dict[int, int], allowed: int):
        G = self.G
        self.allowed = allowed
        self.img = [-1] * G.n
        self.used = 0
        for u, x in pre.items():
            self.img[u] = x
            self.used |= 1 << x
        self.match_e = [-1] * G.m
        self.match_h = {}
        for e, h in pre_match.items():
            self.match_e[e] = h
            self.match_h[h] = e
        # forced edges among preassigned vertices other than pre-matched ones
        for u in pre:
            for e, w in self.inc[u]:
                if w in pre and self.match_e[e] < 0:
                    if not self._augment(e, set()):
                        return None
        rest = [u for u in self.order if u not in pre]
        if self._extend(rest, 0):
            i = {u: self.img[u] for u in range(G.n)}
            f = {e: self.match_e[e] for e in range(G.m)}
            return BergeEmbedding(i, f)
        return None

    def _cands(self, e: int) -> int:
        u, v = self.G.edges[e]
        return self.cover[self.img[u]][self.img[v]] & self.allowed

    def _augment(self, e: int, seen: set) -> bool:
        for h in bits(self._cands(e)):
            if h in seen:
                continue
            seen.add(h)
            other = self.match_h.get(h)
            if other is None or self._augment(other, seen):
                self.match_e[e] = h
                self.match_h[h] = e
                return True
        return False

    def _extend(self, rest: list[int], k: int) -> bool:
        if k == len(rest):
            return True
        self.budget.tick()
        G = self.G
        u = rest[k]
        need = G.degree(u)
        cand = ~self.used & ((1 << self.H.n) - 1)
        back = [e for e, w in self.inc[u] if self.img[w] >= 0]
        for e, w in self.inc[u]:
            if self.img[w] >= 0:
                cand &= self.sh_adj[self.img[w]]
        for x in bits(cand):
            if self.hdeg[x] < need or self.sh_adj[x].bit_count() < need:
                continue
            saved_e = self.match_e[:]
            saved_h = dict(self.match_h)
            self.img[u] = x
            self.used |= 1 << x
            ok = all(self._augment(e, set()) for e in back)
            if ok and self._extend(rest, k + 1):
                return True
            self.img[u] = -1
            self.used &= ~(1 << x)
            self.match_e = saved_e
            self.match_h = saved_h
        return False


BergeResult = Union[BergeEmbedding, None, Unknown]


def contains_berge(H: Hypergraph, G: Graph, budget: Optional[Budget] = None,
                   through: Optional[int] = None) -> BergeResult:
    """Search for a Berge copy of ``G`` in ``H``.

    Backtracks over the vertex injection in descending G-degree order.  At
    every node a bipartite matching between the G-edges with both ends
    placed and the hyperedges containing their images is extended by
    augmenting paths; the node fails as soon as that matching cannot cover
    every such edge.

    Returns an embedding, ``None`` when no copy exists, or ``UNKNOWN`` when
    ``budget`` ran out.  With ``through`` set, only copies that use that
    hyperedge index are sought.
    """
    budget = (budget or Budget()).start()
    if G.n > H.n or G.m > H.m:
        return None
    search = _BergeSearch(H, G, budget)
    full = (1 << H.m) - 1
    try:
        if through is None:
            return search.run({}, {}, full)
        if G.m == 0:
            return None
        allowed = full & ~(1 << through)
        h = H.edges[through]
        for e, (a, b) in enumerate(G.edges):
            for x in h:
                for y in h:
                    if x == y:
                        continue
                    emb = search.run({a: x, b: y}, {e: through}, allowed)
                    if emb is not None:
                        return emb
        return None
    except BudgetExhausted:
        return UNKNOWN


def subgraph_contains(host: Graph, G: Graph) -> Optional[dict[int, int]]:
    """Non-induced embedding of ``G`` into ``host`` as a vertex map, or ``None``."""
    if G.n > host.n or G.m > host.m:
        return None
    # each vertex after the first prefers the most already-placed neighbours
    order: list[int] = []
    placed = 0
    remaining = set(range(G.n))
    while remaining:
        u = max(remaining, key=lambda v: ((G.adj[v] & placed).bit_count(), G.degree(v), -v))
        order.append(u)
        placed |= 1 << u
        remaining.remove(u)
    hdeg = [host.degree(x) for x in range(host.n)]
    img = [-1] * G.n
    full = (1 << host.n) - 1

    def extend(k: int, used: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        cand = full & ~used
        for w in bits(G.adj[u]):
            if img[w] >= 0:
                cand &= host.adj[img[w]]
        need = G.degree(u)
        for x in bits(cand):
            if hdeg[x] < need:
                continue
            img[u] = x
            if extend(k + 1, used | 1 << x):
                return True
            img[u] = -1
        return False

    if extend(0, 0):
        return {u: img[u] for u in range(G.n)}
    return None


@dataclass(frozen=True)
class BlowupSpec:
    """Base graph with a fiber size per vertex; base edges in ``matching``
    become matchings between their fibers instead of complete bipartite graphs."""

    base: Graph
    sizes: tuple[int, ...]
    matching: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        sizes = tuple(self.sizes)
        if len(sizes) != self.base.n:
            raise ValueError(f"{len(sizes)} sizes for a base graph on {self.base.n} vertices")
        if any(s < 1 for s in sizes):
            raise ValueError("fiber sizes must be at least 1")
        M = frozenset((min(e), max(e)) for e in self.matching)
        for e in M:
            if e not in self.base.edge_set:
                raise ValueError(f"matching edge {e} is not a base edge")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "matching", M)


def contains_in_blowup(G: Graph, spec: BlowupSpec) -> Optional[dict[int, int]]:
    """Map ``V(G)`` onto base vertices so that ``G`` fits in the blowup.

    Fiber loads respect ``spec.sizes``, every G-edge lands on a base edge,
    and on a matching edge ``ij`` each G-vertex in fiber ``i`` has at most one
    G-neighbour in fiber ``j`` (checked on the partial assignment).
    Returns the assignment or ``None``.
    """
    base, sizes, M = spec.base, spec.sizes, spec.matching
    nb = base.n
    if G.n > sum(sizes):
        return None
    isolated = [v for v in range(G.n) if G.degree(v) == 0]
    active = [v for v in range(G.n) if G.degree(v) > 0]
    order: list[int] = []
    placed = 0
    remaining = set(active)
    while remaining:
        u = max(remaining, key=lambda v: ((G.adj[v] & placed).bit_count(), G.degree(v), -v))
        order.append(u)
        placed |= 1 << u
        remaining.remove(u)
    in_M = [[False] * nb for _ in range(nb)]
    for i, j in M:
        in_M[i][j] = in_M[j][i] = True
    load = [0] * nb
    phi = [-1] * G.n
    # cross[x][j]: neighbours of x already placed in fiber j
    cross = [[0] * nb for _ in range(G.n)]

    def fits(u: int, i: int) -> bool:
        if load[i] >= sizes[i]:
            return False
        seen_fibers: dict[int, int] = {}
        for w in bits(G.adj[u]):
            j = phi[w]
            if j < 0:
                continue
            if not base.has_edge(i, j):
                return False
            if in_M[i][j]:
                if cross[w][i] >= 1:
                    return False
                seen_fibers[j] = seen_fibers.get(j, 0) + 1
                if seen_fibers[j] > 1:
                    return False
        return True

    def place(u: int, i: int, sign: int) -> None:
        phi[u] = i if sign > 0 else -1
        load[i] += sign
        for w in bits(G.adj[u]):
            cross[w][i] += sign

    def extend(k: int) -> bool:
        if k == len(order):
            return sum(sizes) - sum(load) >= len(isolated)
        u = order[k]
        for i in range(nb):
            if fits(u, i):
                place(u, i, 1)
                if extend(k + 1):
                    return True
                place(u, i, -1)
        return False

    if not extend(0):
        return None
    for v in isolated:
        i = next(i for i in range(nb) if load[i] < sizes[i])
        phi[v] = i
        load[i] += 1
    return {v: phi[v] for v in range(G.n)}


def verify_blowup_assignment(G: Graph, spec: BlowupSpec, phi: dict[int, int]) -> bool:
    """Independent check of a ``contains_in_blowup`` assignment."""
    if set(phi) != set(range(G.n)):
        return False
    load = [0] * spec.base.n
    for v, i in phi.items():
        if not 0 <= i < spec.base.n:
            return False
        load[i] += 1
    if any(load[i] > spec.sizes[i] for i in range(spec.base.n)):
        return False
    for u, v in G.edges:
        i, j = phi[u], phi[v]
        if not spec.base.has_edge(i, j):
            return False
    for i, j in spec.matching:
        for u in range(G.n):
            for a, b in ((i, j), (j, i)):
                if phi[u] == a and sum(1 for w in G.neighbors(u) if phi[w] == b) > 1:
                    return False
    return True
