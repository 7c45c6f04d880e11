"""Plain-text graph files, DOT export and JSON helpers.

Graph file layout::

    # optional comment lines
    n m
    u v          (m edge lines)
    v            (optional: declares an isolated vertex)

When the vertex set is exactly ``0..n-1`` isolated vertices need no
declaration. Any other ID set must be fully covered by edges and
single-ID declaration lines.
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path
from typing import Any, Mapping

from .graph import Graph, NetworkDecomposition, extract_clusters


class GraphFormatError(ValueError):
    pass


def dumps_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    if g.vertices != tuple(range(g.n)):
        lines += [str(v) for v in g.vertices if not g.adjacency[v]]
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected integers, got {raw!r}") from None
    if not rows:
        raise GraphFormatError("empty graph file")
    lineno, header = rows[0]
    if len(header) != 2:
        raise GraphFormatError(f"line {lineno}: header must be 'n m'")
    n, m = header
    edges, declared = [], []
    for lineno, toks in rows[1:]:
        if len(toks) == 2:
            edges.append(tuple(toks))
        elif len(toks) == 1:
            declared.append(toks[0])
        else:
            raise GraphFormatError(f"line {lineno}: expected 'u v' or 'v'")
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    mentioned = {x for e in edges for x in e} | set(declared)
    if len(mentioned) == n:
        vertices = mentioned
    elif all(0 <= x < n for x in mentioned):
        vertices = set(range(n))
    else:
        raise GraphFormatError(f"header announces {n} vertices, file names {len(mentioned)}")
    try:
        g = Graph(vertices, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    if g.m != m:
        raise GraphFormatError("duplicate edges in file")
    return g


def load_graph(path) -> Graph:
    return loads_graph(Path(path).read_text())


def save_graph(g: Graph, path) -> None:
    Path(path).write_text(dumps_graph(g))


def to_dot(g: Graph, labels: Mapping[int, int], name: str = "G") -> str:
    """DOT document with ``label`` and ``cluster`` attributes per vertex."""
    clusters = extract_clusters(g, labels)
    index = {v: i for i, cl in enumerate(clusters) for v in cl.members}
    out = [f"graph {name} {{"]
    out += [f"  {v} [label={labels[v]}, cluster={index[v]}];" for v in g.vertices]
    out += [f"  {u} -- {v};" for u, v in g.edges()]
    out.append("}")
    return "\n".join(out) + "\n"


def decomposition_to_json(nd: NetworkDecomposition) -> dict[str, Any]:
    return {
        "d": nd.d,
        "c": nd.c,
        "labels": {str(v): int(lab) for v, lab in sorted(nd.assignment.items())},
        "clusters": [sorted(cl.members) for cl in nd.clusters],
    }


def decomposition_from_json(g: Graph, doc: Mapping[str, Any]) -> NetworkDecomposition:
    labels = {int(v): int(lab) for v, lab in doc["labels"].items()}
    return NetworkDecomposition.from_labels(g, labels, int(doc["d"]), int(doc["c"]))


def jsonable(obj: Any) -> Any:
    """Convert dataclasses, sets and mappings into plain JSON values."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Mapping):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "item") and callable(obj.item):
        return obj.item()
    return obj


def dumps_json(doc: Any) -> str:
    return json.dumps(jsonable(doc), indent=2, sort_keys=True) + "\n"
