"""Text formats for substitutions and graphs, plus DOT and JSON emitters.

Substitution files::

    # optional header, compact is the default
    format: compact
    0 -> 10
    1 -> 0

In ``tokens`` format the right-hand side is whitespace separated, which
allows multi-character letters. Graph files list ``left <id>``,
``right <id>`` and ``edge <left> <right>`` lines; a repeated ``edge`` line
adds a parallel edge and declaration order is kept.
"""
from __future__ import annotations

import re

from .config_graph import LEFT, RIGHT, BipartiteMultigraph, ConfigurationGraph
from .generators import Generator
from .letter_graphs import EndpointMap
from .words import Substitution, render


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def parse_substitution(text: str) -> Substitution:
    mode = "compact"
    rules = []
    where = {}
    header_allowed = True
    for number, line in _content_lines(text):
        m = re.fullmatch(r"format\s*:\s*(\S+)", line)
        if m:
            if not header_allowed:
                raise ParseError("format header must come before the rules", number)
            mode = m.group(1)
            if mode not in ("compact", "tokens"):
                raise ParseError(f"unknown format {mode!r}", number)
            header_allowed = False
            continue
        header_allowed = False
        if line.count("->") != 1:
            raise ParseError(f"expected 'LETTER -> IMAGE', got {line!r}", number)
        lhs, rhs = (part.strip() for part in line.split("->"))
        if not lhs or len(lhs.split()) != 1:
            raise ParseError(f"malformed left-hand side {lhs!r}", number)
        if mode == "compact" and len(lhs) != 1:
            raise ParseError(f"compact format needs single-character letters, got {lhs!r}", number)
        image = tuple(rhs.split()) if mode == "tokens" else tuple(rhs.replace(" ", ""))
        if not image:
            raise ParseError(f"empty image for letter {lhs!r}", number)
        if lhs in where:
            raise ParseError(f"duplicate rule for {lhs!r} (first on line {where[lhs]})", number)
        where[lhs] = number
        rules.append((lhs, image, number))
    if not rules:
        raise ParseError("no rules")
    for lhs, image, number in rules:
        for b in image:
            if b not in where:
                raise ParseError(f"unknown letter {b!r} in the image of {lhs!r}", number)
    return Substitution(tuple((lhs, image) for lhs, image, _ in rules))


def render_substitution(sub: Substitution) -> str:
    compact = all(len(a) == 1 for a in sub.alphabet)
    lines = [] if compact else ["format: tokens"]
    for a, image in sub.rules:
        lines.append(f"{a} -> {render(image, '' if compact else ' ')}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> BipartiteMultigraph:
    left, right, edges, order = [], [], [], []
    for number, line in _content_lines(text):
        parts = line.split()
        kind = parts[0]
        if kind in (LEFT, RIGHT) and len(parts) == 2:
            bucket = left if kind == LEFT else right
            if parts[1] in bucket:
                raise ParseError(f"duplicate {kind} vertex {parts[1]!r}", number)
            bucket.append(parts[1])
            order.append((kind, parts[1]))
        elif kind == "edge" and len(parts) == 3:
            edges.append((parts[1], parts[2], number))
        else:
            raise ParseError(f"malformed line {line!r}", number)
    for l, r, number in edges:
        if l not in left:
            raise ParseError(f"edge names unknown left vertex {l!r}", number)
        if r not in right:
            raise ParseError(f"edge names unknown right vertex {r!r}", number)
    return BipartiteMultigraph(tuple(left), tuple(right),
                               tuple((l, r) for l, r, _ in edges), tuple(order))


def render_graph(g: BipartiteMultigraph) -> str:
    lines = [f"{side} {v}" for side, v in g.order]
    lines += [f"edge {l} {r}" for l, r in g.edges]
    return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def vertex_label(v) -> str:
    """Letters print as themselves, word pairs as ``(u,v)``."""
    if isinstance(v, tuple) and len(v) == 2 and all(isinstance(x, tuple) for x in v):
        return f"({render(v[0])},{render(v[1])})"
    if isinstance(v, tuple):
        return render(v)
    return str(v)


def endpoint_map_dot(g: EndpointMap, name: str = "G") -> str:
    ids = {v: f"n{i}" for i, v in enumerate(g.vertices)}
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f"  {ids[v]} [label={_quote(vertex_label(v))}];")
    for v, t in g.edges():
        lines.append(f"  {ids[v]} -> {ids[t]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def bipartite_dot(g: BipartiteMultigraph, left_labels: dict | None = None,
                  right_labels: dict | None = None, name: str = "G") -> str:
    left_labels = left_labels or {}
    right_labels = right_labels or {}
    lid = {v: f"L{i}" for i, v in enumerate(g.left)}
    rid = {v: f"R{i}" for i, v in enumerate(g.right)}
    lines = [f"graph {name} {{", "  rankdir=LR;", "  ranksep=1.5;"]
    for side, ids, labels in ((LEFT, lid, left_labels), (RIGHT, rid, right_labels)):
        lines.append(f"  subgraph {side} {{")
        lines.append("    rank=same;")
        for v, i in ids.items():
            label = str(v)
            if v in labels and render(labels[v]) != label:
                label = f"{v}: {render(labels[v])}"
            lines.append(f"    {i} [label={_quote(label)}];")
        lines.append("  }")
    for l, r in g.edges:
        lines.append(f"  {lid[l]} -- {rid[r]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def configuration_dot(cg: ConfigurationGraph, name: str = "config") -> str:
    return bipartite_dot(cg.graph, cg.left_labels, cg.right_labels, name)


def generator_json(g: Generator) -> dict:
    return {"left_wing": render(g.v), "center": render(g.u), "right_wing": render(g.w),
            "text": str(g)}


def endpoint_map_json(g: EndpointMap) -> dict:
    return {"vertices": [vertex_label(v) for v in g.vertices],
            "edges": [[vertex_label(v), vertex_label(t)] for v, t in g.edges()]}


def graph_json(g: BipartiteMultigraph) -> dict:
    return {"left": list(g.left), "right": list(g.right), "edges": [list(e) for e in g.edges]}


def configuration_json(cg: ConfigurationGraph) -> dict:
    data = graph_json(cg.graph)
    data["power"] = cg.power
    data["edge_generators"] = [str(g) for g in cg.provenance]
    return data
