"""DOT emission shared by the discourse tree and the value trees, plus a tiny edge reader."""

from __future__ import annotations

import re
from typing import Iterable

_EDGE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*->\s*"((?:[^"\\]|\\.)*)"')


def _quote(name: object) -> str:
    text = str(name).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def _unquote(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text)


def dot_graph(
    name: str,
    nodes: Iterable[tuple[object, str | None]],
    edges: Iterable[tuple[object, object, str | None]],
    marked: Iterable[object] = (),
) -> str:
    """Serialize a tree as a DOT digraph.

    `nodes` is a sequence of (id, label) pairs, where label None means the id
    is shown as-is. `edges` are (parent, child, edge label) triples in output
    order. Nodes in `marked` get a doubled border.
    """
    marked = set(marked)
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for node_id, label in nodes:
        attrs = []
        if label is not None:
            attrs.append(f"label={_quote(label)}")
        if node_id in marked:
            attrs.append("peripheries=2")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(node_id)}{suffix};")
    for parent, child, label in edges:
        suffix = f" [label={_quote(label)}]" if label else ""
        lines.append(f"  {_quote(parent)} -> {_quote(child)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot_edges(text: str) -> dict[str, str]:
    """Read the edge statements of a DOT digraph back into a child -> parent map."""
    parents: dict[str, str] = {}
    for line in text.splitlines():
        m = _EDGE.match(line)
        if m:
            parents[_unquote(m.group(2))] = _unquote(m.group(1))
    return parents
