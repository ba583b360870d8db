"""Command-line interface: ``bergelab <subcommand>``.

Every command prints one JSON document on stdout.  Exit codes: 0 success,
2 parse or validation error, 3 search budget exhausted (partial result
still printed).
"""
from __future__ import annotations

import re
import sys
from typing import Optional

import click

from . import classify as cls
from . import constructions as con
from .catalog import build_catalog
from .core import Graph, shadow
from .embed import UNKNOWN, BlowupSpec, Budget, contains_berge, contains_in_blowup, subgraph_contains
from .formats import ParseError, dumps, graph_to_obj, hypergraph_to_obj, parse_graph, parse_hypergraph
from .search import default_threads, exact_cover_turan

EXIT_INVALID = 2
EXIT_BUDGET = 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INVALID)


def _graph(path: str) -> Graph:
    try:
        return parse_graph(_read(path))
    except (ParseError, ValueError, OSError) as exc:
        _fail(f"{path}: {exc}")


def _hypergraph(path: str):
    try:
        return parse_hypergraph(_read(path))
    except (ParseError, ValueError, OSError) as exc:
        _fail(f"{path}: {exc}")


def _emit(obj) -> None:
    click.echo(dumps(obj))


_UNITS = {"ms": 0.001, "s": 1.0, "m": 60.0, "h": 3600.0, "": 1.0}


def parse_duration(text: str) -> float:
    m = re.fullmatch(r"\s*([0-9]*\.?[0-9]+)\s*(ms|s|m|h|)\s*", text)
    if not m:
        raise click.BadParameter(f"cannot read duration {text!r}")
    return float(m.group(1)) * _UNITS[m.group(2)]


def _ints(text: Optional[str]) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


def _pairs(text: Optional[str]) -> list[tuple[int, int]]:
    out = []
    for chunk in (text or "").replace(" ", "").split(","):
        if not chunk:
            continue
        a, sep, b = chunk.partition("-")
        if not sep:
            raise click.BadParameter(f"matching edge {chunk!r} should look like 0-1")
        out.append((int(a), int(b)))
    return out


def _budget(budget: Optional[str], nodes: Optional[int]) -> Budget:
    return Budget(parse_duration(budget) if budget else None, nodes)


@click.group()
def main():
    """Berge hypergraphs, shadows and cover Turan numbers."""


@main.command("shadow")
@click.option("-H", "--hypergraph", "hpath", required=True, help="Hypergraph JSON file or '-'.")
def shadow_cmd(hpath):
    """Shadow graph with per-pair covering hyperedges."""
    H = _hypergraph(hpath)
    sh = shadow(H)
    out = graph_to_obj(sh.graph)
    out["covering"] = [[u, v, list(ids)] for (u, v), ids in sh.covering.items()]
    _emit(out)


@main.command("berge")
@click.option("-H", "--hypergraph", "hpath", required=True)
@click.option("-G", "--graph", "gpath", required=True)
@click.option("--budget", default=None, help="Wall-clock limit such as 30s or 2m.")
@click.option("--nodes", type=int, default=None, help="Search node limit.")
def berge_cmd(hpath, gpath, budget, nodes):
    """Decide whether H contains a Berge copy of G."""
    H, G = _hypergraph(hpath), _graph(gpath)
    res = contains_berge(H, G, _budget(budget, nodes))
    if res is UNKNOWN:
        _emit({"contains": None, "status": "Unknown", "certificate": None})
        sys.exit(EXIT_BUDGET)
    _emit({"contains": res is not None, "status": "Decided",
           "certificate": res.to_json() if res is not None else None})


@main.command("subgraph")
@click.option("-i", "--host", "host_path", required=True)
@click.option("-G", "--graph", "gpath", required=True)
def subgraph_cmd(host_path, gpath):
    """Decide whether G is a (not necessarily induced) subgraph of the host."""
    host, G = _graph(host_path), _graph(gpath)
    phi = subgraph_contains(host, G)
    _emit({"contains": phi is not None,
           "map": None if phi is None else {str(k): v for k, v in sorted(phi.items())}})


def _spec(base_path: str, sizes: str, matching: Optional[str]) -> BlowupSpec:
    base = _graph(base_path)
    try:
        return BlowupSpec(base, tuple(_ints(sizes)), frozenset(_pairs(matching)))
    except ValueError as exc:
        _fail(str(exc))


@main.command("blowup-contains")
@click.option("-G", "--graph", "gpath", required=True)
@click.option("-i", "--base", "base_path", required=True, help="Base graph of the blowup.")
@click.option("--sizes", required=True, help="Fiber sizes, e.g. 1,3,3,3,3.")
@click.option("--matching-edges", default=None, help="Base edges with matching semantics, e.g. 0-1.")
def blowup_contains_cmd(gpath, base_path, sizes, matching_edges):
    """Decide whether G fits into a (generalized) blowup."""
    G = _graph(gpath)
    phi = contains_in_blowup(G, _spec(base_path, sizes, matching_edges))
    _emit({"contains": phi is not None,
           "assignment": None if phi is None else {str(k): v for k, v in sorted(phi.items())}})


@main.command("classify")
@click.option("-G", "--graph", "gpath", required=True)
@click.option("--json", "as_json", is_flag=True, help="Accepted for compatibility; output is always JSON.")
def classify_cmd(gpath, as_json):
    """Degeneracy conditions and blowup characterization for 3-uniform hosts."""
    G = _graph(gpath)
    try:
        report = cls.is_3_degenerate_cover(G)
        blow = cls.blowup_characterization(G) if G.n <= cls.BLOWUP_CAP else None
    except ValueError as exc:
        _fail(str(exc))
    out = report.to_json()
    out["blowup"] = blow.to_json() if blow else None
    _emit(out)


@main.command("density")
@click.option("-G", "--graph", "gpath", required=True)
@click.option("-k", "k", type=int, default=3, show_default=True)
def density_cmd(gpath, k):
    """Cover Turan density of G for k-uniform hosts (exact value or bounds)."""
    G = _graph(gpath)
    try:
        report = cls.cover_density_k(G, k)
    except ValueError as exc:
        _fail(str(exc))
    _emit(report.to_json())


@main.command("construct")
@click.argument("kind", type=click.Choice(["h1", "h2", "turan", "blowup", "split", "shrink"]))
@click.option("-n", "n", type=int)
@click.option("-k", "k", type=int, default=3, show_default=True)
@click.option("-t", "t", type=int)
@click.option("-m", "m", type=int)
@click.option("--sizes", default=None)
@click.option("--matching-edges", default=None)
@click.option("--seed", type=int, default=None, help="Seeded shrink; omit for the derandomized one.")
@click.option("-G", "--graph", "gpath", default=None, help="Base graph (blowup) or bipartite graph (split).")
@click.option("-H", "--hypergraph", "hpath", default=None, help="Hypergraph to shrink.")
def construct_cmd(kind, n, k, t, m, sizes, matching_edges, seed, gpath, hpath):
    """Build one of the constructions and print it with role labels."""
    try:
        if kind in ("h1", "h2", "turan"):
            if n is None:
                raise click.UsageError(f"{kind} needs -n")
            if kind == "h1":
                lc = con.construct_h1(n)
            elif kind == "h2":
                lc = con.construct_h2(n)
            else:
                lc = con.construct_turan(n, k, t if t is not None else k)
            _emit(hypergraph_to_obj(lc.hypergraph, lc.labels))
        elif kind == "blowup":
            if gpath is None or sizes is None:
                raise click.UsageError("blowup needs -G and --sizes")
            spec = _spec(gpath, sizes, matching_edges)
            out = graph_to_obj(con.blowup(spec))
            out["labels"] = con.blowup_labels(spec)
            _emit(out)
        elif kind == "split":
            if gpath is None:
                raise click.UsageError("split needs -G")
            lc = con.split_construction(_graph(gpath))
            _emit(hypergraph_to_obj(lc.hypergraph, lc.labels))
        else:
            _shrink(hpath, m, seed)
    except ValueError as exc:
        _fail(str(exc))


def _shrink(hpath: Optional[str], m: Optional[int], seed: Optional[int]) -> None:
    if hpath is None or m is None:
        raise click.UsageError("shrink needs -H and -m")
    H = _hypergraph(hpath)
    mode = "derandomized" if seed is None else "seeded"
    out = con.shrink(H, m, mode, seed)
    obj = hypergraph_to_obj(out)
    obj["shadow_before"] = shadow(H).m
    obj["shadow_after"] = shadow(out).m
    obj["guarantee"] = str(con.shrink_bound(H, m))
    _emit(obj)


@main.command("shrink")
@click.option("-H", "--hypergraph", "hpath", required=True)
@click.option("-m", "m", type=int, required=True)
@click.option("--seed", type=int, default=None, help="Seeded random shrink; omit for the derandomized one.")
def shrink_cmd(hpath, m, seed):
    """Shrink every hyperedge to m vertices."""
    try:
        _shrink(hpath, m, seed)
    except ValueError as exc:
        _fail(str(exc))


@main.command("exact")
@click.option("-n", "n", type=int, required=True)
@click.option("-R", "R", required=True, help="Allowed hyperedge sizes, e.g. 3 or 3,4.")
@click.option("-G", "--graph", "gpath", required=True)
@click.option("--budget", default=None, help="Wall-clock limit such as 60s.")
@click.option("--nodes", type=int, default=None, help="Search node limit.")
@click.option("--threads", type=int, default=None, help="Worker processes (default: BERGELAB_THREADS or CPU count).")
def exact_cmd(n, R, gpath, budget, nodes, threads):
    """Exact cover Turan number with a Berge-free witness."""
    G = _graph(gpath)
    threads = threads if threads is not None else default_threads()
    try:
        res = exact_cover_turan(n, _ints(R), G, _budget(budget, nodes), threads)
    except ValueError as exc:
        _fail(str(exc))
    _emit(res.to_json())
    if not res.exact:
        sys.exit(EXIT_BUDGET)


@main.command("catalog")
@click.option("--max-n", type=int, required=True)
@click.option("-o", "--out", "out_path", required=True)
def catalog_cmd(max_n, out_path):
    """Write the JSON-lines catalog of classified graphs."""
    try:
        count = build_catalog(max_n, out_path)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    _emit({"records": count, "path": out_path})


if __name__ == "__main__":
    main()
