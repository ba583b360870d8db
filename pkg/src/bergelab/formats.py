"""JSON and graph6 input/output with strict validation."""
from __future__ import annotations

import json
from typing import Any, Optional

import networkx as nx

from .core import Graph, Hypergraph


class ParseError(ValueError):
    """Malformed or invalid input; ``where`` locates the problem."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def graph_to_graph6(G: Graph) -> str:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(G.n))
    nxg.add_edges_from(G.edges)
    return nx.to_graph6_bytes(nxg, header=False).decode("ascii").strip()


def graph_from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError, IndexError, UnicodeEncodeError) as exc:
        raise ParseError(f"invalid graph6 string {s!r}: {exc}", "graph6") from None
    return Graph(nxg.number_of_nodes(), list(nxg.edges()))


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", where)
    return value


def _n(obj: Any) -> int:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", "$")
    if "n" not in obj or "edges" not in obj:
        raise ParseError("object needs keys 'n' and 'edges'", "$")
    n = _int(obj["n"], "$.n")
    if n < 0:
        raise ParseError("vertex count must be non-negative", "$.n")
    if not isinstance(obj["edges"], list):
        raise ParseError("expected a list", "$.edges")
    return n


def graph_from_obj(obj: Any) -> Graph:
    n = _n(obj)
    seen = set()
    edges = []
    for k, e in enumerate(obj["edges"]):
        where = f"$.edges[{k}]"
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError("edge must be a two-element list", where)
        u, v = _int(e[0], where), _int(e[1], where)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", where)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}", where)
        p = (min(u, v), max(u, v))
        if p in seen:
            raise ParseError(f"duplicate edge {list(p)}", where)
        seen.add(p)
        edges.append(p)
    return Graph(n, edges)


def hypergraph_from_obj(obj: Any) -> Hypergraph:
    n = _n(obj)
    R: Optional[frozenset[int]] = None
    if "R" in obj:
        if not isinstance(obj["R"], list) or not obj["R"]:
            raise ParseError("R must be a non-empty list of sizes", "$.R")
        R = frozenset(_int(r, f"$.R[{k}]") for k, r in enumerate(obj["R"]))
        if min(R) < 2:
            raise ParseError("sizes in R must be at least 2", "$.R")
    seen = set()
    edges = []
    for k, e in enumerate(obj["edges"]):
        where = f"$.edges[{k}]"
        if not isinstance(e, list):
            raise ParseError("hyperedge must be a list", where)
        verts = [_int(v, where) for v in e]
        if len(set(verts)) != len(verts):
            raise ParseError("hyperedge repeats a vertex", where)
        if len(verts) < 2:
            raise ParseError("hyperedge needs at least 2 vertices", where)
        if any(not 0 <= v < n for v in verts):
            raise ParseError(f"vertex out of range 0..{n - 1}", where)
        if R is not None and len(verts) not in R:
            raise ParseError(f"size {len(verts)} not in R={sorted(R)}", where)
        t = tuple(sorted(verts))
        if t in seen:
            raise ParseError(f"duplicate hyperedge {list(t)}", where)
        seen.add(t)
        edges.append(t)
    return Hypergraph(n, tuple(edges), R)


def parse_graph(text: str) -> Graph:
    """Graph from JSON ``{"n":..,"edges":[[u,v],..]}`` or a graph6 string."""
    s = text.strip()
    if s.startswith("{"):
        return graph_from_obj(_load_json(s))
    return graph_from_graph6(s)


def parse_hypergraph(text: str) -> Hypergraph:
    return hypergraph_from_obj(_load_json(text))


def graph_to_obj(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in sorted(G.edges)]}


def hypergraph_to_obj(H: Hypergraph, labels: Optional[dict[str, int]] = None) -> dict:
    obj: dict[str, Any] = {"n": H.n, "R": sorted(H.R), "edges": [list(e) for e in sorted(H.edges)]}
    if labels is not None:
        obj["labels"] = dict(sorted(labels.items(), key=lambda kv: kv[1]))
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))
