"""3-uniform degeneracy tests and cover Turan density oracle."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .constructions import bipartition
from .core import Graph, bits, cycle_graph
from .embed import BlowupSpec, contains_in_blowup

CHROMATIC_CAP = 32
BLOWUP_CAP = 16


def _check_cap(G: Graph, cap: int, what: str) -> None:
    if G.n > cap:
        raise ValueError(f"{what} supports at most {cap} vertices, got {G.n}")


def _greedy_clique(G: Graph) -> int:
    best = 0
    for start in range(G.n):
        clique, cand = 1, G.adj[start]
        while cand:
            v = max(bits(cand), key=lambda w: (G.adj[w] & cand).bit_count())
            clique += 1
            cand &= G.adj[v]
        best = max(best, clique)
    return best


def _dsatur_colors(G: Graph) -> int:
    color = [-1] * G.n
    for _ in range(G.n):
        u = max((v for v in range(G.n) if color[v] < 0),
                key=lambda v: (len({color[w] for w in G.neighbors(v) if color[w] >= 0}),
                               G.degree(v), -v))
        taken = {color[w] for w in G.neighbors(u)}
        c = 0
        while c in taken:
            c += 1
        color[u] = c
    return max(color, default=-1) + 1


def chromatic_number(G: Graph) -> int:
    """Exact chromatic number by DSATUR branch and bound.

    A greedy clique gives the lower bound and greedy DSATUR the first
    upper bound; the search only looks for colorings beating the incumbent.
    """
    _check_cap(G, CHROMATIC_CAP, "chromatic_number")
    if G.n == 0:
        return 0
    lower, best = _greedy_clique(G), _dsatur_colors(G)
    if lower == best:
        return best
    color = [-1] * G.n
    # sat[v]: bitmask of colors seen among v's neighbours
    sat = [0] * G.n

    def search(colored: int, used: int) -> None:
        nonlocal best
        if best == lower or used >= best:
            return
        if colored == G.n:
            best = used
            return
        u = max((v for v in range(G.n) if color[v] < 0),
                key=lambda v: (sat[v].bit_count(), G.degree(v), -v))
        for c in range(used + 1):
            if c + 1 >= best:
                break
            if sat[u] >> c & 1:
                continue
            color[u] = c
            touched = [w for w in G.neighbors(u) if not sat[w] >> c & 1]
            for w in touched:
                sat[w] |= 1 << c
            search(colored + 1, max(used, c + 1))
            for w in touched:
                sat[w] &= ~(1 << c)
            color[u] = -1

    search(0, 0)
    return best


def find_triangle(G: Graph) -> Optional[tuple[int, int, int]]:
    for u, v in G.edges:
        common = G.adj[u] & G.adj[v]
        if common:
            return (u, v, bits(common)[0])
    return None


@dataclass
class Condition1:
    holds: bool
    vertex: Optional[int] = None
    parts: Optional[tuple[list[int], list[int]]] = None
    triangle: Optional[tuple[int, int, int]] = None
    reason: str = ""

    def to_json(self) -> dict:
        return {"holds": self.holds, "vertex": self.vertex,
                "parts": [list(p) for p in self.parts] if self.parts else None,
                "triangle": list(self.triangle) if self.triangle else None,
                "reason": self.reason}


@dataclass
class Condition2:
    holds: bool
    P1: Optional[list[int]] = None
    P2: Optional[list[int]] = None
    reason: str = ""

    def to_json(self) -> dict:
        return {"holds": self.holds, "P1": self.P1, "P2": self.P2, "reason": self.reason}


def condition1(G: Graph) -> Condition1:
    """Triangle-free, and deleting some single vertex leaves a bipartite graph."""
    if G.n == 0:
        return Condition1(True, reason="empty graph")
    tri = find_triangle(G)
    if tri is not None:
        return Condition1(False, triangle=tri, reason="contains a triangle")
    for v in range(G.n):
        rest = [w for w in range(G.n) if w != v]
        split = bipartition(G.induced(rest))
        if split is not None:
            parts = ([rest[i] for i in split[0]], [rest[i] for i in split[1]])
            return Condition1(True, vertex=v, parts=parts)
    return Condition1(False, reason="no single vertex deletion leaves a bipartite graph")


def verify_condition1(G: Graph, c: Condition1) -> bool:
    if not c.holds:
        return False
    if find_triangle(G) is not None:
        return False
    if G.n == 0:
        return True
    P, Q = c.parts
    if sorted(P + Q + [c.vertex]) != list(range(G.n)):
        return False
    side = {v: 0 for v in P} | {v: 1 for v in Q}
    return all(side[u] != side[v] for u, v in G.edges if c.vertex not in (u, v))


def condition2(G: Graph) -> Condition2:
    """Split V into P1 inducing a matching and an independent P2, by exhaustive branching."""
    _check_cap(G, CHROMATIC_CAP, "condition2")
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    side = [-1] * G.n

    def ok(u: int, s: int) -> bool:
        if s == 2:
            return not any(side[w] == 2 for w in G.neighbors(u))
        inner = [w for w in G.neighbors(u) if side[w] == 1]
        if len(inner) > 1:
            return False
        return all(sum(1 for x in G.neighbors(w) if side[x] == 1) == 0 for w in inner)

    def search(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        for s in (2, 1):
            if ok(u, s):
                side[u] = s
                if search(k + 1):
                    return True
                side[u] = -1
        return False

    if search(0):
        return Condition2(True, [v for v in range(G.n) if side[v] == 1],
                          [v for v in range(G.n) if side[v] == 2])
    return Condition2(False, reason="no partition into an induced matching and an independent set")


def verify_condition2(G: Graph, P1: list[int], P2: list[int]) -> bool:
    if sorted(P1 + P2) != list(range(G.n)):
        return False
    s1, s2 = set(P1), set(P2)
    if any(u in s2 and v in s2 for u, v in G.edges):
        return False
    deg = {v: 0 for v in P1}
    for u, v in G.edges:
        if u in s1 and v in s1:
            deg[u] += 1
            deg[v] += 1
    return all(d <= 1 for d in deg.values())


@dataclass
class DegeneracyReport:
    cond1: Condition1
    cond2: Condition2
    degenerate: bool

    def to_json(self) -> dict:
        return {"cond1": self.cond1.to_json(), "cond2": self.cond2.to_json(),
                "degenerate": self.degenerate}


def is_3_degenerate_cover(G: Graph) -> DegeneracyReport:
    c1, c2 = condition1(G), condition2(G)
    return DegeneracyReport(c1, c2, c1.holds and c2.holds)


def c5_blowup_spec(s: int) -> BlowupSpec:
    """C5 with a single-vertex fiber over vertex 0 and fibers of size s elsewhere."""
    return BlowupSpec(cycle_graph(5), (1, s, s, s, s))


def c3_matched_blowup_spec(s: int) -> BlowupSpec:
    """Triangle blowup with fibers of size s whose 0-1 edge carries a matching."""
    return BlowupSpec(cycle_graph(3), (s, s, s), frozenset({(0, 1)}))


@dataclass
class BlowupCharacterization:
    holds: bool
    c5: Optional[dict[int, int]]
    c3: Optional[dict[int, int]]
    s: int

    def to_json(self) -> dict:
        enc = lambda phi: None if phi is None else {str(k): v for k, v in sorted(phi.items())}
        return {"holds": self.holds, "s": self.s, "c5": enc(self.c5), "c3": enc(self.c3)}


def blowup_characterization(G: Graph) -> BlowupCharacterization:
    """Containment in both ``C5(1,s,s,s,s)`` and ``C3(s,s,s;{01})`` with ``s = |V(G)|``."""
    _check_cap(G, BLOWUP_CAP, "blowup_characterization")
    s = max(G.n, 1)
    phi5 = contains_in_blowup(G, c5_blowup_spec(s))
    phi3 = contains_in_blowup(G, c3_matched_blowup_spec(s))
    return BlowupCharacterization(phi5 is not None and phi3 is not None, phi5, phi3, s)


def turan_density_bound(chi: int) -> Fraction:
    """``1 - 1/(chi - 1)``, taken as 0 for chi <= 2."""
    if chi <= 2:
        return Fraction(0)
    return 1 - Fraction(1, chi - 1)


@dataclass
class DensityReport:
    k: int
    chromatic: int
    exact: Optional[Fraction]
    lower: Fraction
    upper: Fraction
    rule: str
    degeneracy: Optional[DegeneracyReport] = field(default=None, repr=False)

    def to_json(self) -> dict:
        fmt = lambda x: None if x is None else str(x)
        return {"k": self.k, "chromatic": self.chromatic, "exact": fmt(self.exact),
                "lower": fmt(self.lower), "upper": fmt(self.upper), "rule": self.rule}


def cover_density_3(G: Graph) -> DensityReport:
    chi = chromatic_number(G)
    upper = turan_density_bound(chi)
    if chi >= 4:
        return DensityReport(3, chi, upper, upper, upper, "chromatic>=4")
    report = is_3_degenerate_cover(G)
    if report.degenerate:
        return DensityReport(3, chi, Fraction(0), Fraction(0), upper, "degenerate", report)
    half = Fraction(1, 2)
    return DensityReport(3, chi, half, half, upper, "non-degenerate", report)


def cover_density_k(G: Graph, k: int) -> DensityReport:
    """Density of ``G`` in k-uniform hosts, or bounds when no result decides it."""
    if k < 2:
        raise ValueError(f"k={k} must be at least 2")
    if k == 3:
        return cover_density_3(G)
    chi = chromatic_number(G)
    upper = turan_density_bound(chi)
    if chi >= k + 1:
        return DensityReport(k, chi, upper, upper, upper, "chromatic>k")
    if upper == 0:
        return DensityReport(k, chi, Fraction(0), Fraction(0), upper, "upper-bound-zero")
    return DensityReport(k, chi, None, Fraction(0), upper, "bounds-only")


@dataclass
class SplitPreconditions:
    holds: bool
    diagnostics: list[str]
    parts: Optional[tuple[list[int], list[int]]] = None


def _connected(G: Graph) -> bool:
    if G.n == 0:
        return False
    seen, frontier = 1, 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= G.adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen.bit_count() == G.n


def split_preconditions(G: Graph) -> SplitPreconditions:
    """Connected bipartite, every edge on a C4, same-part vertices share a neighbour."""
    if not _connected(G):
        return SplitPreconditions(False, ["graph is not connected"])
    parts = bipartition(G)
    if parts is None:
        return SplitPreconditions(False, ["graph is not bipartite"])
    diagnostics = []
    for u, v in G.edges:
        others_v = G.adj[v] & ~(1 << u)
        if not any(G.adj[x] & others_v for x in bits(G.adj[u] & ~(1 << v))):
            diagnostics.append(f"edge {u}-{v} lies on no C4")
    for part in parts:
        for i, u in enumerate(part):
            for v in part[i + 1:]:
                if not G.adj[u] & G.adj[v]:
                    diagnostics.append(f"vertices {u} and {v} have no common neighbour")
    return SplitPreconditions(not diagnostics, diagnostics, parts)


def has_full_vertex_per_side(G: Graph) -> bool:
    """Connected bipartite, minimum degree 2, and each part has a vertex
    adjacent to the whole other part."""
    if not _connected(G) or G.n < 2:
        return False
    parts = bipartition(G)
    if parts is None or any(G.degree(v) < 2 for v in range(G.n)):
        return False
    for mine, other in (parts, parts[::-1]):
        other_mask = sum(1 << v for v in other)
        if not any(G.adj[v] == other_mask for v in mine):
            return False
    return True
