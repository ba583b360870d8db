"""JSON-lines catalog of classified small graphs, one line per isomorphism class."""
from __future__ import annotations

import json
import os
from datetime import datetime, timezone

from .canon import canonical_form, graph_classes
from .classify import (
    Condition1,
    blowup_characterization,
    c3_matched_blowup_spec,
    c5_blowup_spec,
    cover_density_3,
    is_3_degenerate_cover,
    turan_density_bound,
    verify_condition1,
    verify_condition2,
)
from .core import Graph
from .embed import verify_blowup_assignment
from .formats import graph_from_graph6

CATALOG_CAP = 7


def classify_record(G: Graph, created: str) -> dict:
    report = cover_density_3(G)
    deg = report.degeneracy or is_3_degenerate_cover(G)
    blow = blowup_characterization(G)
    phi = lambda m: None if m is None else {str(k): v for k, v in sorted(m.items())}
    return {
        "canonical": canonical_form(G).decode("ascii"),
        "n": G.n,
        "m": G.m,
        "chi": report.chromatic,
        "degenerate": report.exact == 0,
        "density3": str(report.exact),
        "witnesses": {
            "cond1": deg.cond1.to_json(),
            "cond2": deg.cond2.to_json(),
            "blowup_c5": phi(blow.c5),
            "blowup_c3": phi(blow.c3),
        },
        "created": created,
    }


def verify_record(rec: dict) -> bool:
    """Re-check a record's witnesses against the graph decoded from its key."""
    G = graph_from_graph6(rec["canonical"])
    w = rec["witnesses"]
    s = max(G.n, 1)
    blow_ok = all(
        w[key] is not None and verify_blowup_assignment(G, spec, {int(k): v for k, v in w[key].items()})
        for key, spec in (("blowup_c5", c5_blowup_spec(s)), ("blowup_c3", c3_matched_blowup_spec(s))))
    cond_ok = False
    if w["cond1"] is not None and w["cond2"] is not None and w["cond1"]["holds"] and w["cond2"]["holds"]:
        c1 = w["cond1"]
        parts = tuple(c1["parts"]) if c1["parts"] is not None else None
        cond_ok = (verify_condition1(G, Condition1(True, c1["vertex"], parts))
                   and verify_condition2(G, w["cond2"]["P1"], w["cond2"]["P2"]))
    if rec["degenerate"] != blow_ok or rec["degenerate"] != cond_ok:
        return False
    chi = rec["chi"]
    if chi >= 4:
        expected = str(turan_density_bound(chi))
    else:
        expected = "0" if rec["degenerate"] else "1/2"
    return rec["density3"] == expected


def _existing_timestamps(path: str) -> dict[str, str]:
    if not os.path.exists(path):
        return {}
    stamps = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rec = json.loads(line)
                stamps[rec["canonical"]] = rec.get("created", "")
    return stamps


def build_catalog(max_n: int, out_path: str) -> int:
    """Classify every graph on ``max_n`` vertices and write one record per class.

    Smaller graphs appear padded with isolated vertices.  Records already
    present in ``out_path`` keep their ``created`` stamp, so rerunning over
    an existing catalog rewrites identical bytes.
    """
    if not 1 <= max_n <= CATALOG_CAP:
        raise ValueError(f"max_n must be in 1..{CATALOG_CAP}, got {max_n}")
    stamps = _existing_timestamps(out_path)
    now = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
    records = []
    for G in graph_classes(max_n):
        key = canonical_form(G).decode("ascii")
        records.append(classify_record(G, stamps.get(key, now)))
    records.sort(key=lambda r: (r["n"], r["canonical"]))
    tmp = out_path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
    os.replace(tmp, out_path)
    return len(records)
