"""Input parsers and JSON / DOT exports."""

from __future__ import annotations

import json
from pathlib import Path

from .connectivity import (DEFAULT_CAP, ConnectivitySystem, GraphSystem, GroundSet, MatroidSystem,
                           TableSystem, indices)
from .errors import InputError
from .separations import Separation
from .tangles import TangleCatalog
from .treedec import TreeDecomposition, TreeEdge

KINDS = ("graph", "matroid", "table")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def detect_kind(text: str) -> str:
    for _, line in _content_lines(text):
        head = line.split()[0].lower()
        if head in ("matroid", "table"):
            return head
        return "graph"
    return "graph"


def parse_graph(text: str, cap: int = DEFAULT_CAP) -> GraphSystem:
    """One edge per line, ``u v``; element ``i`` is the ``i``-th edge line."""
    edges = []
    for lineno, line in _content_lines(text):
        tok = line.split()
        if len(tok) != 2:
            raise InputError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((tok[0], tok[1]))
    if not edges:
        raise InputError("graph file lists no edges")
    return GraphSystem(edges, cap=cap)


def parse_matroid(text: str, cap: int = DEFAULT_CAP) -> MatroidSystem:
    """Header ``matroid gf<p> <rows> <cols>`` followed by the matrix rows."""
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty matroid file")
    lineno, header = lines[0]
    tok = header.split()
    if len(tok) != 4 or tok[0].lower() != "matroid" or not tok[1].lower().startswith("gf"):
        raise InputError(f"line {lineno}: expected 'matroid gf<p> <rows> <cols>'")
    try:
        p, rows, cols = int(tok[1][2:]), int(tok[2]), int(tok[3])
    except ValueError:
        raise InputError(f"line {lineno}: bad number in header") from None
    body = lines[1:]
    if len(body) != rows:
        raise InputError(f"expected {rows} matrix rows, found {len(body)}")
    matrix = []
    for lineno, line in body:
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise InputError(f"line {lineno}: matrix entries must be integers") from None
        if len(row) != cols:
            raise InputError(f"line {lineno}: expected {cols} entries, found {len(row)}")
        matrix.append(row)
    return MatroidSystem(matrix, p, cap=cap)


def parse_table(text: str, cap: int = DEFAULT_CAP) -> TableSystem:
    """Header ``table <n>`` followed by ``<bitmask-hex> <value>`` lines."""
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty table file")
    lineno, header = lines[0]
    tok = header.split()
    if len(tok) != 2 or tok[0].lower() != "table":
        raise InputError(f"line {lineno}: expected 'table <n>'")
    try:
        n = int(tok[1])
    except ValueError:
        raise InputError(f"line {lineno}: bad element count") from None
    values = {}
    for lineno, line in lines[1:]:
        tok = line.split()
        if len(tok) != 2:
            raise InputError(f"line {lineno}: expected '<bitmask-hex> <value>'")
        try:
            key, val = int(tok[0], 16), int(tok[1])
        except ValueError:
            raise InputError(f"line {lineno}: bad mask or value") from None
        if key in values:
            raise InputError(f"line {lineno}: duplicate entry for {tok[0]}")
        values[key] = val
    return TableSystem(n, values, cap=cap)


def load_system(path, kind: str | None = None, cap: int = DEFAULT_CAP) -> ConnectivitySystem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    kind = kind or detect_kind(text)
    if kind == "graph":
        return parse_graph(text, cap)
    if kind == "matroid":
        return parse_matroid(text, cap)
    if kind == "table":
        return parse_table(text, cap)
    raise InputError(f"unknown input kind {kind!r}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def catalog_to_json(catalog: TangleCatalog) -> dict:
    return {
        "tangles": [
            {
                "order": t.order,
                "small_sides": [indices(s) for s in t.small_sides],
                "maximal": flag,
            }
            for t, flag in zip(catalog.tangles, catalog.maximal_flags)
        ]
    }


def td_to_json(td: TreeDecomposition) -> dict:
    return {
        "elements": list(td.ground.labels),
        "nodes": [{"id": i, "part": indices(p)} for i, p in enumerate(td.parts)],
        "edges": [
            {"u": e.u, "v": e.v, "side_u": indices(e.sep.a), "order": e.sep.order}
            for e in td.edges
        ],
    }


def td_from_json(data: dict, ground: GroundSet) -> TreeDecomposition:
    """Rebuild a decomposition from its JSON form; schema errors raise InputError."""
    try:
        elements = data["elements"]
        nodes = sorted(data["nodes"], key=lambda x: x["id"])
        edges = data["edges"]
    except (KeyError, TypeError):
        raise InputError("decomposition JSON lacks elements/nodes/edges") from None
    if len(elements) != ground.n:
        raise InputError(f"decomposition has {len(elements)} elements, input has {ground.n}")
    if [x["id"] for x in nodes] != list(range(len(nodes))):
        raise InputError("node ids must be 0..k-1")
    full = ground.full

    def to_mask(idx):
        m = 0
        for i in idx:
            if not isinstance(i, int) or not 0 <= i < ground.n:
                raise InputError(f"element index {i!r} out of range")
            m |= 1 << i
        return m

    parts = [to_mask(x["part"]) for x in nodes]
    tree_edges = []
    for e in edges:
        try:
            u, v, side, order = e["u"], e["v"], e["side_u"], e["order"]
        except (KeyError, TypeError):
            raise InputError("edge entries need u, v, side_u, order") from None
        if not (0 <= u < len(parts) and 0 <= v < len(parts)):
            raise InputError(f"edge ({u}, {v}) refers to a missing node")
        a = to_mask(side)
        tree_edges.append(TreeEdge(u, v, Separation(int(order), a, full ^ a)))
    return TreeDecomposition(ground, parts, tree_edges)


def td_to_dot(td: TreeDecomposition) -> str:
    labels = td.ground.labels
    out = ["graph decomposition {", "  node [shape=box];"]
    for i, p in enumerate(td.parts):
        text = ", ".join(labels[j] for j in indices(p)) or "(empty)"
        out.append(f'  n{i} [label="{i}: {text}"];')
    for e in td.edges:
        out.append(f'  n{e.u} -- n{e.v} [label="{e.sep.order}"];')
    out.append("}")
    return "\n".join(out) + "\n"
