"""Acceptance criteria, one test per criterion, each under its time limit.

Run with pytest (a PASS/FAIL line per criterion is printed in the summary)
or directly: ``python tests/test_acceptance.py``.
"""
import os
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from math import ceil, comb

sys.path.insert(0, os.path.dirname(__file__))

from bergelab.canon import graph_classes  # noqa: E402
from bergelab.classify import blowup_characterization, cover_density_3, is_3_degenerate_cover  # noqa: E402
from bergelab.constructions import construct_h1, construct_h2, construct_turan, shrink, split_construction  # noqa: E402
from bergelab.core import (  # noqa: E402
    Hypergraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    shadow,
)
from bergelab.embed import contains_berge, subgraph_contains, verify_embedding  # noqa: E402
from bergelab.search import exact_cover_turan, verify_berge_free  # noqa: E402
from oracles import brute_berge, naive_cover_turan, random_c4_free_bipartite, random_graph  # noqa: E402

RESULTS: dict[int, tuple[bool, float, str]] = {}

K2, P3, C3, C4, K4 = complete_graph(2), path_graph(3), cycle_graph(3), cycle_graph(4), complete_graph(4)


@contextmanager
def criterion(number: int, limit: float, label: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        RESULTS[number] = (False, time.perf_counter() - start, label)
        raise
    elapsed = time.perf_counter() - start
    RESULTS[number] = (elapsed < limit, elapsed, label)
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"


def test_criterion_1_construction_densities():
    with criterion(1, 1.0, "construction shadow counts"):
        for n in (4, 8, 12, 24, 48):
            m = shadow(construct_h1(n).hypergraph).m
            assert m == n * n // 4 + n // 4
            assert Fraction(m, comb(n, 2)) == Fraction(1, 2) + Fraction(1, n - 1)
        for n in (4, 8, 16):
            assert shadow(construct_h2(n).hypergraph).m == n * n // 4 + n // 2 - 1


def test_criterion_2_witnesses_are_berge_free():
    with criterion(2, 5.0, "construction witnesses are Berge-free"):
        for n in (4, 8, 12, 16):
            assert contains_berge(construct_h1(n).hypergraph, C3) is None
        for n, count in ((6, 12), (9, 27), (12, 48)):
            H = construct_turan(n, 3, 3).hypergraph
            assert shadow(H).m == count
            assert contains_berge(H, K4) is None


def test_criterion_3_characterization_sweep():
    with criterion(3, 120.0, "degeneracy vs blowup sweep on <= 6 vertices"):
        total = disagreements = 0
        for n in range(1, 7):
            for G in graph_classes(n):
                total += 1
                disagreements += is_3_degenerate_cover(G).degenerate != blowup_characterization(G).holds
        assert total == 1 + 2 + 4 + 11 + 34 + 156
        assert disagreements == 0


def test_criterion_4_named_classifications():
    with criterion(4, 5.0, "named classifications"):
        assert is_3_degenerate_cover(C4).degenerate
        assert is_3_degenerate_cover(complete_bipartite(2, 3)).degenerate
        assert not is_3_degenerate_cover(C3).degenerate
        assert cover_density_3(C3).exact == Fraction(1, 2)
        assert cover_density_3(K4).exact == Fraction(2, 3)
        assert cover_density_3(complete_graph(5)).exact == Fraction(3, 4)
        assert cover_density_3(petersen_graph()).exact == Fraction(1, 2)


def test_criterion_5_exact_search_matches_oracle():
    with criterion(5, 60.0 * 9, "exact search vs unpruned oracle"):
        for n in (3, 4, 5):
            for G in (K2, P3, C3):
                t = time.perf_counter()
                res = exact_cover_turan(n, {3}, G)
                took = time.perf_counter() - t
                assert res.exact
                assert took < (1.0 if n <= 4 else 60.0)
                assert res.value == naive_cover_turan(n, {3}, G)
        res = exact_cover_turan(4, {3}, C3)
        assert res.value == 5 and res.witness.m == 2


def test_criterion_6_mixed_size_sandwich():
    with criterion(6, 300.0, "mixed-size sandwich"):
        for n in (4, 5):
            for G in (K2, C3):
                e3 = exact_cover_turan(n, {3}, G)
                e4 = exact_cover_turan(n, {4}, G)
                e34 = exact_cover_turan(n, {3, 4}, G)
                assert e3.exact and e4.exact and e34.exact
                assert max(e3.value, e4.value) <= e34.value <= 2 * e3.value


def test_criterion_7_derandomized_shrink():
    with criterion(7, 30.0, "derandomized shrink guarantee"):
        rng = random.Random(2024)
        for _ in range(50):
            edges = set()
            while len(edges) < 10:
                edges.add(tuple(sorted(rng.sample(range(8), 4))))
            H = Hypergraph(8, tuple(edges), frozenset({4}))
            assert shadow(shrink(H, 3, "derandomized")).m >= ceil(Fraction(shadow(H).m, 2))


def _no_c4_through_doubled_pairs(lc) -> bool:
    sh = shadow(lc.hypergraph).graph
    for name, x in lc.labels.items():
        if name.endswith("_1"):
            y = lc.vertex(name[:-1] + "2")
            for p in sh.neighbors(x):
                for q in sh.neighbors(y):
                    if p != y and q != x and p != q and sh.has_edge(p, q):
                        return False
    return True


def test_criterion_8_split_construction():
    with criterion(8, 60.0, "split construction is Berge-K22-free"):
        rng = random.Random(88)
        K22 = complete_bipartite(2, 2)
        for _ in range(25):
            a = rng.randint(2, 6)
            b = rng.randint(2, 12 - a)
            Hp = random_c4_free_bipartite(rng, a, b)
            assert subgraph_contains(Hp, K22) is None
            lc = split_construction(Hp, (list(range(a)), list(range(a, a + b))))
            assert verify_berge_free(lc.hypergraph, K22)
            assert _no_c4_through_doubled_pairs(lc)


def test_criterion_9_solver_cross_validation():
    with criterion(9, 60.0, "Berge solver vs brute force"):
        rng = random.Random(99)
        positives = 0
        for _ in range(200):
            n = rng.randint(3, 7)
            H = Hypergraph(n, tuple({tuple(sorted(rng.sample(range(n), rng.randint(2, min(4, n)))))
                                     for _ in range(rng.randint(1, 6))}))
            G = random_graph(rng, rng.randint(2, 4), 0.6)
            res = contains_berge(H, G)
            assert (res is not None) == brute_berge(H, G)
            if res is not None:
                positives += 1
                assert verify_embedding(H, G, res)
                assert subgraph_contains(shadow(H).graph, G) is not None
        assert positives > 0


def summary_lines() -> list[str]:
    lines = []
    for number in range(1, 10):
        if number not in RESULTS:
            lines.append(f"criterion {number}: NOT RUN")
            continue
        ok, elapsed, label = RESULTS[number]
        lines.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {label}")
    return lines


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for fn in tests:
        try:
            fn()
        except Exception as exc:  # report and continue with the next criterion
            print(f"{fn.__name__}: {type(exc).__name__}: {exc}", file=sys.stderr)
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _, _ in RESULTS.values()) and len(RESULTS) == 9 else 1)
