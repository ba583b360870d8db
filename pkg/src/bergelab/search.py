"""Exact cover Turan numbers by branch and bound over hyperedge families.

The search walks isomorphism classes of Berge-G-free R-graphs on ``n``
vertices, growing one hyperedge at a time.  Only edge-minimal families are
explored (every hyperedge owns a pair no other hyperedge covers); reducing
any family to an edge-minimal one keeps its shadow, so some maximizer is
edge-minimal.  Both restrictions are hereditary, which gives the bound: a
descendant can only cover pairs of hyperedges that are addable right now.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import Value
from typing import Iterable, Optional

from .canon import canonical_hypergraph, canonical_labeling
from .core import Graph, Hypergraph, shadow_size
from .embed import UNKNOWN, Budget, BudgetExhausted, contains_berge

EXACT = "Exact"
LOWER_BOUND_ONLY = "LowerBoundOnly"


@dataclass
class SearchResult:
    value: int
    witness: Hypergraph
    status: str
    nodes: int
    elapsed: float

    @property
    def exact(self) -> bool:
        return self.status == EXACT

    def to_json(self) -> dict:
        return {"value": self.value, "status": self.status, "nodes": self.nodes,
                "elapsed": round(self.elapsed, 6),
                "witness": {"n": self.witness.n, "R": sorted(self.witness.R),
                            "edges": [list(e) for e in self.witness.edges]}}


def verify_berge_free(H: Hypergraph, G: Graph, budget: Optional[Budget] = None) -> bool:
    """True iff ``H`` has no Berge copy of ``G``; raises ``BudgetExhausted`` if undecided."""
    res = contains_berge(H, G, budget)
    if res is UNKNOWN:
        raise BudgetExhausted
    return res is None


# (family, covered pair mask, mask of pairs with co-degree exactly 1, addable candidates)
_State = tuple[tuple[int, ...], int, int, tuple[int, ...]]


class _Explorer:
    def __init__(self, n: int, R: frozenset[int], G: Graph, budget: Budget, shared=None):
        self.n, self.R, self.G, self.budget, self.shared = n, R, G, budget, shared
        self.cands = sorted(c for r in sorted(R) for c in combinations(range(n), r))
        pid = {p: k for k, p in enumerate(combinations(range(n), 2))}
        self.cpairs = [sum(1 << pid[p] for p in combinations(c, 2)) for c in self.cands]
        self.best = 0
        self.best_family: tuple[int, ...] = ()
        self.seen: set = set()

    def incumbent(self) -> int:
        if self.shared is not None:
            return max(self.best, self.shared.value)
        return self.best

    def offer(self, family: tuple[int, ...], covered: int) -> None:
        value = covered.bit_count()
        if value > self.best:
            self.best, self.best_family = value, family
            if self.shared is not None:
                with self.shared.get_lock():
                    if value > self.shared.value:
                        self.shared.value = value

    def hypergraph(self, family: Iterable[int]) -> Hypergraph:
        return Hypergraph(self.n, tuple(self.cands[c] for c in family), self.R)

    def valid(self, family: tuple[int, ...], covered: int, ones: int, c: int) -> bool:
        cp = self.cpairs[c]
        if not cp & ~covered:
            return False
        for g in family:
            if not self.cpairs[g] & ones & ~cp:
                return False
        H = self.hypergraph(family + (c,))
        through = H.edges.index(self.cands[c])
        res = contains_berge(H, self.G, self.budget, through=through)
        if res is UNKNOWN:
            raise BudgetExhausted
        return res is None

    def root(self) -> _State:
        addable = tuple(c for c in range(len(self.cands)) if self.valid((), 0, 0, c))
        return ((), 0, 0, addable)

    def key(self, family: tuple[int, ...]) -> tuple:
        return canonical_labeling(self.n, [self.cands[c] for c in family])[0]

    def children(self, state: _State) -> list[_State]:
        family, covered, ones, addable = state
        out = []
        for h in addable:
            fam = tuple(sorted(family + (h,)))
            k = self.key(fam)
            if k in self.seen:
                continue
            self.seen.add(k)
            cp = self.cpairs[h]
            cov2 = covered | cp
            ones2 = (ones & ~cp) | (cp & ~covered)
            add2 = tuple(g for g in addable if g != h and self.valid(fam, cov2, ones2, g))
            out.append((fam, cov2, ones2, add2))
        return out

    def promising(self, state: _State) -> bool:
        family, covered, _, addable = state
        reach = covered
        for g in addable:
            reach |= self.cpairs[g]
        return reach.bit_count() > self.incumbent()

    def visit(self, state: _State) -> bool:
        """Count the node, record it as a candidate, and say whether to expand it."""
        self.budget.tick()
        self.offer(state[0], state[1])
        return self.promising(state)

    def dfs(self, state: _State) -> None:
        if not self.visit(state):
            return
        for child in self.children(state):
            self.dfs(child)


_SHARED = None


def _init_worker(shared) -> None:
    global _SHARED
    _SHARED = shared


def _run_subtree(args):
    n, R, G, state, seconds, nodes = args
    ex = _Explorer(n, R, G, Budget(seconds, nodes).start(), _SHARED)
    finished = True
    try:
        ex.dfs(state)
    except BudgetExhausted:
        finished = False
    return ex.best, ex.best_family, ex.budget.nodes_used, finished


def default_threads() -> int:
    env = os.environ.get("BERGELAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def exact_cover_turan(n: int, R: Iterable[int], G: Graph, budget: Optional[Budget] = None,
                      threads: int = 1) -> SearchResult:
    """Largest shadow of a Berge-G-free R-graph on ``n`` vertices.

    Status is ``Exact`` when the search tree was exhausted, otherwise
    ``LowerBoundOnly`` with the best family found so far.  The value does
    not depend on ``threads``; the witness is returned canonically labeled.
    """
    R = frozenset(R)
    if not R or min(R) < 2:
        raise ValueError(f"R={sorted(R)} must be non-empty with sizes >= 2")
    if G.m == 0:
        raise ValueError("G must have at least one edge")
    start = time.monotonic()
    budget = (budget or Budget()).start()
    shared = Value("i", 0) if threads > 1 else None
    ex = _Explorer(n, R, G, budget, shared)
    status = EXACT
    best, best_family = 0, ()
    try:
        root = ex.root()
        if threads <= 1:
            ex.dfs(root)
        else:
            frontier = [root]
            target = 4 * threads
            while frontier and len(frontier) < target:
                nxt = []
                for st in frontier:
                    if ex.visit(st):
                        nxt.extend(ex.children(st))
                frontier = nxt
            if frontier:
                seconds = None
                if budget.seconds is not None:
                    seconds = max(0.0, budget.seconds - (time.monotonic() - start))
                nodes = None
                if budget.nodes is not None:
                    nodes = max(1, -(-(budget.nodes - budget.nodes_used) // len(frontier)))
                with shared.get_lock():
                    shared.value = max(shared.value, ex.best)
                tasks = [(n, R, G, st, seconds, nodes) for st in frontier]
                with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(shared,)) as pool:
                    for value, family, used, finished in pool.map(_run_subtree, tasks):
                        budget.nodes_used += used
                        if value > ex.best:
                            ex.best, ex.best_family = value, family
                        if not finished:
                            status = LOWER_BOUND_ONLY
    except BudgetExhausted:
        status = LOWER_BOUND_ONLY
    best, best_family = ex.best, ex.best_family
    witness = canonical_hypergraph(ex.hypergraph(best_family)) if n <= 10 else ex.hypergraph(best_family)
    assert shadow_size(witness) == best
    assert verify_berge_free(witness, G)
    return SearchResult(best, witness, status, budget.nodes_used, time.monotonic() - start)
