"""The discourse segment tree.

Leaves are clauses. The tree grows only at its right frontier, the path
from the root through successive rightmost children, through two
operations:

* ``attach`` adds the new clause as the rightmost child of a frontier node;
* ``adjoin`` puts a fresh parent in place of a frontier node, with the old
  node as its left child and the new clause as its right child.

Everything off the frontier is kept (and rendered) but can never be
touched again.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .render import dot_graph
from .sorts import Sort


class TreeError(Exception):
    """An illegal operation on a discourse tree."""


class UnknownNode(TreeError):
    def __init__(self, node_id: str):
        super().__init__(f"no node {node_id!r} in the tree")
        self.node_id = node_id


class UnknownTarget(UnknownNode):
    pass


class TargetOffFrontier(TreeError):
    def __init__(self, target: str, frontier: Sequence[str]):
        super().__init__(
            f"target {target!r} is not on the right frontier [{', '.join(frontier)}]"
        )
        self.target = target
        self.frontier = list(frontier)


class DuplicateNode(TreeError):
    """A clause id or explicit parent label that is already in the tree."""

    def __init__(self, node_id: str):
        super().__init__(f"node id {node_id!r} is already in use")
        self.node_id = node_id


class AlreadyInitialized(TreeError):
    def __init__(self):
        super().__init__("tree already has a root; init is legal only on an empty tree")


class EmptyTree(TreeError):
    def __init__(self):
        super().__init__("tree has not been initialized")


@dataclass(frozen=True)
class ConveyedContent:
    """One thing a segment conveys: a sort tag plus a paraphrase."""

    sort: Sort
    gloss: str

    def __post_init__(self):
        if not isinstance(self.sort, Sort):
            object.__setattr__(self, "sort", Sort.parse(self.sort))
        if not self.gloss or not self.gloss.strip():
            raise ValueError("conveyed content needs a non-empty gloss")

    def to_dict(self) -> dict[str, str]:
        return {"sort": self.sort.value, "gloss": self.gloss}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ConveyedContent":
        return cls(Sort.parse(data["sort"]), data["gloss"])


@dataclass(frozen=True)
class Clause:
    id: str
    text: str = ""
    conveys: tuple[ConveyedContent, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ValueError("clause id must be non-empty")
        object.__setattr__(self, "conveys", tuple(self.conveys))


@dataclass
class SegmentNode:
    """A node of the discourse tree.

    Nodes built from a clause keep that clause even if something is later
    attached beneath them. ``conveys`` holds only what the node itself
    contributes; see `DiscourseTree.content` for the full proxy content.
    """

    id: str
    children: list[str] = field(default_factory=list)
    clause: Clause | None = None
    conveys: tuple[ConveyedContent, ...] = ()
    override: bool = False
    active: bool = True

    @property
    def is_leaf(self) -> bool:
        return not self.children


def generated_label(taken: set[str] | dict, counter: int) -> tuple[str, int]:
    """Next free ``g<n>`` label after `counter`; returns the label and the new counter."""
    while True:
        counter += 1
        label = f"g{counter}"
        if label not in taken:
            return label, counter


class DiscourseTree:
    def __init__(self):
        self.nodes: dict[str, SegmentNode] = {}
        self.root: str | None = None
        self.op_count = 0
        self._parent: dict[str, str] = {}
        self._clause_order: list[str] = []
        self._label_counter = 0

    @classmethod
    def from_clause(cls, clause: Clause) -> "DiscourseTree":
        tree = cls()
        tree.init(clause)
        return tree

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node_id: object) -> bool:
        return node_id in self.nodes

    @property
    def clauses(self) -> list[str]:
        """Clause ids in the order they were added."""
        return list(self._clause_order)

    def parent(self, node_id: str) -> str | None:
        self._node(node_id)
        return self._parent.get(node_id)

    def clause_position(self, clause_id: str) -> int:
        try:
            return self._clause_order.index(clause_id)
        except ValueError:
            raise UnknownNode(clause_id) from None

    # -- mutation ---------------------------------------------------------

    def init(self, clause: Clause) -> str:
        if self.root is not None:
            raise AlreadyInitialized()
        self.nodes[clause.id] = SegmentNode(clause.id, clause=clause, conveys=clause.conveys)
        self.root = clause.id
        self._clause_order.append(clause.id)
        self.op_count += 1
        return clause.id

    def attach(self, target: str, clause: Clause) -> str:
        """Add `clause` as the rightmost child of frontier node `target`."""
        frontier = self._check_target(target)
        if clause.id in self.nodes:
            raise DuplicateNode(clause.id)
        self.nodes[clause.id] = SegmentNode(clause.id, clause=clause, conveys=clause.conveys)
        self.nodes[target].children.append(clause.id)
        self._parent[clause.id] = target
        self._clause_order.append(clause.id)
        self._deactivate(frontier)
        self.op_count += 1
        return clause.id

    def adjoin(
        self,
        target: str,
        clause: Clause,
        label: str | None = None,
        conveys: Iterable[ConveyedContent] | None = None,
    ) -> tuple[str, str]:
        """Insert a new parent over frontier node `target`, with `clause` as its right child.

        Returns ``(parent id, leaf id)``. Without `conveys` the new parent's
        content is the union of its children's; with it, exactly `conveys`.
        """
        frontier = self._check_target(target)
        if clause.id in self.nodes:
            raise DuplicateNode(clause.id)
        if label is None:
            label, counter = generated_label(self.nodes.keys() | {clause.id}, self._label_counter)
        else:
            if label in self.nodes or label == clause.id:
                raise DuplicateNode(label)
            counter = self._label_counter + 1
        self._label_counter = counter

        parent = SegmentNode(label, children=[target, clause.id])
        if conveys is not None:
            parent.conveys = tuple(conveys)
            parent.override = True
        grand = self._parent.get(target)
        if grand is None:
            self.root = label
        else:
            siblings = self.nodes[grand].children
            siblings[siblings.index(target)] = label
            self._parent[label] = grand
        self.nodes[label] = parent
        self.nodes[clause.id] = SegmentNode(clause.id, clause=clause, conveys=clause.conveys)
        self._parent[target] = label
        self._parent[clause.id] = label
        self._clause_order.append(clause.id)
        self._deactivate(frontier)
        self.op_count += 1
        return label, clause.id

    def _check_target(self, target: str) -> list[str]:
        if self.root is None:
            raise EmptyTree()
        if target not in self.nodes:
            raise UnknownTarget(target)
        frontier = self.right_frontier()
        if target not in frontier:
            raise TargetOffFrontier(target, frontier)
        return frontier

    def _deactivate(self, old_frontier: list[str]) -> None:
        current = set(self.right_frontier())
        for node_id in old_frontier:
            if node_id not in current:
                self.nodes[node_id].active = False

    # -- queries ----------------------------------------------------------

    def _node(self, node_id: str) -> SegmentNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(node_id) from None

    def right_frontier(self) -> list[str]:
        """Root-to-leaf path through rightmost children."""
        if self.root is None:
            raise EmptyTree()
        path = [self.root]
        while self.nodes[path[-1]].children:
            path.append(self.nodes[path[-1]].children[-1])
        return path

    def on_frontier(self, node_id: str) -> bool:
        return node_id in self.right_frontier()

    def span(self, node_id: str) -> list[str]:
        """Clause ids under `node_id`, left to right."""
        node = self._node(node_id)
        out = [node.clause.id] if node.clause is not None else []
        for child in node.children:
            out.extend(self.span(child))
        return out

    def content(self, node_id: str) -> tuple[ConveyedContent, ...]:
        """What the node's proxy stands for: its own conveys, then its children's unless overridden."""
        node = self._node(node_id)
        if node.override:
            return node.conveys
        seen: dict[ConveyedContent, None] = dict.fromkeys(node.conveys)
        for child in node.children:
            seen.update(dict.fromkeys(self.content(child)))
        return tuple(seen)

    def depth(self, node_id: str) -> int:
        d = 0
        while (node_id := self._parent.get(node_id)) is not None:
            d += 1
        return d

    def walk(self) -> list[str]:
        """All node ids in pre-order."""
        if self.root is None:
            return []
        out, todo = [], [self.root]
        while todo:
            node_id = todo.pop()
            out.append(node_id)
            todo.extend(reversed(self.nodes[node_id].children))
        return out

    # -- output -----------------------------------------------------------

    def snapshot(self) -> dict[str, Any]:
        """Plain-data picture of the current structure, for traces and figures."""
        return {
            "root": self.root,
            "children": {n: list(self.nodes[n].children) for n in self.walk()},
            "frontier": self.right_frontier() if self.root is not None else [],
        }

    def render(self, fmt: str = "ascii", text: bool = False) -> str:
        if fmt == "ascii":
            return self._render_ascii(text)
        if fmt == "dot":
            return self._render_dot()
        raise ValueError(f"unknown render format {fmt!r}")

    def _render_ascii(self, text: bool) -> str:
        if self.root is None:
            return ""
        frontier = set(self.right_frontier())
        lines = []

        def visit(node_id: str, depth: int) -> None:
            node = self.nodes[node_id]
            line = "  " * depth + node_id
            if text and node.clause is not None and node.clause.text:
                line += f"  {node.clause.text}"
            if node_id in frontier:
                line += " *"
            lines.append(line)
            for child in node.children:
                visit(child, depth + 1)

        visit(self.root, 0)
        return "\n".join(lines) + "\n"

    def _render_dot(self) -> str:
        order = self.walk()
        edges = [(n, c, None) for n in order for c in self.nodes[n].children]
        frontier = self.right_frontier() if self.root is not None else []
        return dot_graph("discourse", [(n, None) for n in order], edges, frontier)


def init_tree(clause: Clause) -> DiscourseTree:
    return DiscourseTree.from_clause(clause)
