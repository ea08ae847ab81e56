"""Readers and writers for edge-list, DIMACS graph, and a small GML subset."""

from __future__ import annotations

import logging
import re
from pathlib import Path

from .graph import A, B, D, UNASSIGNED, Graph, GraphError, ParseStats, SelfLoopError, Tripartition

log = logging.getLogger(__name__)

FORMATS = ("edgelist", "dimacs", "gml")


class MalformedLineError(GraphError):
    def __init__(self, line_no: int, detail: str = ""):
        msg = f"malformed line {line_no}"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.line_no = line_no


class MissingHeaderError(GraphError):
    pass


class VertexOutOfRangeError(GraphError):
    def __init__(self, vertex: int, n: int):
        super().__init__(f"vertex {vertex} outside 1..{n}")
        self.vertex = vertex


class UnbalancedBracketsError(GraphError):
    pass


class EdgeBeforeNodeError(GraphError):
    def __init__(self, node_id: str):
        super().__init__(f"edge references undeclared node {node_id}")
        self.node_id = node_id


def _as_text(data: str | bytes) -> str:
    return data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data


def _finish(n: int, edges: list[tuple[int, int]], labels, declared=None) -> Graph:
    g = Graph.from_edges(n, edges, labels)
    dup = len(edges) - g.m
    if dup:
        log.warning("dropped %d duplicate edge(s)", dup)
    return Graph(g.adjacency, g.labels, ParseStats(duplicate_edges=dup, declared_edges=declared))


def parse_edge_list(data: str | bytes) -> Graph:
    """One ``<label> <label>`` pair per line; ``#`` comments and blanks skipped."""
    ids: dict[str, int] = {}
    edges = []
    for line_no, raw in enumerate(_as_text(data).splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLineError(line_no, f"expected 2 tokens, got {len(tokens)}")
        a, b = tokens
        if a == b:
            raise SelfLoopError(a)
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        edges.append((u, v))
    return _finish(len(ids), edges, list(ids))


def parse_dimacs_graph(data: str | bytes) -> Graph:
    """DIMACS ``p edge n m`` / ``e u v`` format with 1-based vertices."""
    n = None
    declared = None
    edges = []
    for line_no, raw in enumerate(_as_text(data).splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if len(tokens) != 4:
                raise MalformedLineError(line_no, "bad problem line")
            try:
                n, declared = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise MalformedLineError(line_no, "non-integer size") from None
        elif tokens[0] == "e":
            if n is None:
                raise MissingHeaderError("edge line before 'p edge' header")
            if len(tokens) != 3:
                raise MalformedLineError(line_no, "edge line needs two vertices")
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise MalformedLineError(line_no, "non-integer vertex") from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise VertexOutOfRangeError(x, n)
            if u == v:
                raise SelfLoopError(str(u))
            edges.append((u - 1, v - 1))
        else:
            raise MalformedLineError(line_no, f"unknown line type {tokens[0]!r}")
    if n is None:
        raise MissingHeaderError("no 'p edge' header")
    g = _finish(n, edges, [str(i) for i in range(1, n + 1)], declared)
    if declared != g.m:
        log.warning("header declares %d edges, found %d distinct", declared, g.m)
    return g


_GML_TOKEN = re.compile(r'\s*(?:(\[)|(\])|"([^"]*)"|([^\s\[\]"]+))')


def _gml_tokens(text: str):
    pos = 0
    text = "\n".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))
    while True:
        mt = _GML_TOKEN.match(text, pos)
        if mt is None:
            if text[pos:].strip():
                raise GraphError(f"unterminated string near offset {pos}")
            return
        pos = mt.end()
        if mt.group(1):
            yield "["
        elif mt.group(2):
            yield "]"
        elif mt.group(3) is not None:
            yield ("str", mt.group(3))
        else:
            yield ("atom", mt.group(4))


def _gml_tree(text: str) -> list:
    """Parse GML into nested ``[(key, value), ...]`` lists."""
    stack: list[list] = [[]]
    key = None
    for tok in _gml_tokens(text):
        if tok == "[":
            if key is None:
                raise UnbalancedBracketsError("'[' without a key")
            child: list = []
            stack[-1].append((key, child))
            stack.append(child)
            key = None
        elif tok == "]":
            if key is not None:
                raise GraphError(f"key {key!r} without value")
            if len(stack) == 1:
                raise UnbalancedBracketsError("unmatched ']'")
            stack.pop()
        elif key is None:
            key = tok[1]
        else:
            stack[-1].append((key, tok[1]))
            key = None
    if len(stack) != 1:
        raise UnbalancedBracketsError("unclosed '['")
    if key is not None:
        raise GraphError(f"key {key!r} without value")
    return stack[0]


def parse_gml(data: str | bytes) -> Graph:
    """Minimal GML: ``graph [ node [ id .. ] edge [ source .. target .. ] ]``.

    Only ``id``, ``source`` and ``target`` are read; every other key is
    skipped.  Directed graphs are read as undirected.
    """
    tree = _gml_tree(_as_text(data))
    graphs = [v for k, v in tree if k == "graph" and isinstance(v, list)]
    if not graphs:
        raise GraphError("no 'graph [ ... ]' block")
    ids: dict[str, int] = {}
    edges = []
    for key, body in graphs[0]:
        if not isinstance(body, list):
            continue
        fields = {k: v for k, v in body if not isinstance(v, list)}
        if key == "node":
            if "id" not in fields:
                raise GraphError("node without id")
            if fields["id"] in ids:
                raise GraphError(f"duplicate node id {fields['id']}")
            ids[fields["id"]] = len(ids)
        elif key == "edge":
            try:
                s, t = fields["source"], fields["target"]
            except KeyError:
                raise GraphError("edge without source/target") from None
            for x in (s, t):
                if x not in ids:
                    raise EdgeBeforeNodeError(x)
            if s == t:
                raise SelfLoopError(s)
            edges.append((ids[s], ids[t]))
    return _finish(len(ids), edges, list(ids))


def to_edge_list(g: Graph) -> str:
    """Edge-list text using vertex labels.  Isolated vertices are not representable."""
    return "".join(f"{g.label(u)} {g.label(v)}\n" for u, v in g.edges())


def to_dimacs_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


_PARSERS = {"edgelist": parse_edge_list, "dimacs": parse_dimacs_graph, "gml": parse_gml}


def guess_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".gml":
        return "gml"
    if suffix in (".col", ".dimacs", ".dim"):
        return "dimacs"
    return "edgelist"


def parse_graph(data: str | bytes, fmt: str) -> Graph:
    if fmt not in _PARSERS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return _PARSERS[fmt](data)


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    return parse_graph(Path(path).read_bytes(), fmt or guess_format(path))


def format_solution(g: Graph, t: Tripartition) -> str:
    """Three lines ``A: ...``, ``B: ...``, ``D: ...`` of space-separated labels."""
    return "".join(
        f"{name}:{''.join(' ' + g.label(v) for v in members)}\n"
        for name, members in (("A", t.A), ("B", t.B), ("D", t.D))
    )


def parse_solution(data: str | bytes, g: Graph) -> Tripartition:
    """Inverse of format_solution.  Vertices not listed stay UNASSIGNED."""
    ids = {g.label(v): v for v in range(g.n)}
    side = [UNASSIGNED] * g.n
    codes = {"A": A, "B": B, "D": D}
    seen = set()
    for line_no, raw in enumerate(_as_text(data).splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in codes:
            raise MalformedLineError(line_no, "expected 'A:', 'B:' or 'D:'")
        if key in seen:
            raise MalformedLineError(line_no, f"class {key} listed twice")
        seen.add(key)
        for label in rest.split():
            if label not in ids:
                raise GraphError(f"unknown vertex label {label!r}")
            v = ids[label]
            if side[v] != UNASSIGNED:
                raise GraphError(f"vertex {label!r} listed in two classes")
            side[v] = codes[key]
    return Tripartition(side)
