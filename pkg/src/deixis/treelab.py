"""Binary search trees and AVL trees, kept for contrast with the discourse tree.

Both insert only at the fringe (an empty child slot). A BST never changes
its root; an AVL tree rotates to stay balanced, so its root, fringe and
right frontier can all move.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .render import dot_graph


class DuplicateValue(ValueError):
    pass


@dataclass
class ValueNode:
    value: int
    left: "ValueNode | None" = None
    right: "ValueNode | None" = None
    height: int = 1


def _h(node: ValueNode | None) -> int:
    return node.height if node else 0


def _fix(node: ValueNode) -> ValueNode:
    node.height = 1 + max(_h(node.left), _h(node.right))
    return node


def balance_factor(node: ValueNode) -> int:
    return _h(node.left) - _h(node.right)


def _rotate_right(node: ValueNode) -> ValueNode:
    pivot = node.left
    node.left = pivot.right
    pivot.right = node
    _fix(node)
    return _fix(pivot)


def _rotate_left(node: ValueNode) -> ValueNode:
    pivot = node.right
    node.right = pivot.left
    pivot.left = node
    _fix(node)
    return _fix(pivot)


def _rebalance(node: ValueNode) -> ValueNode:
    _fix(node)
    bf = balance_factor(node)
    if bf > 1:
        if balance_factor(node.left) < 0:
            node.left = _rotate_left(node.left)
        return _rotate_right(node)
    if bf < -1:
        if balance_factor(node.right) > 0:
            node.right = _rotate_right(node.right)
        return _rotate_left(node)
    return node


class ValueTree:
    def __init__(self, variant: str = "bst", values=()):
        if variant not in ("bst", "avl"):
            raise ValueError(f"variant must be 'bst' or 'avl', not {variant!r}")
        self.variant = variant
        self.root: ValueNode | None = None
        self.size = 0
        for v in values:
            self.insert(v)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(self.inorder())

    def __contains__(self, value: object) -> bool:
        node = self.root
        while node is not None:
            if value == node.value:
                return True
            node = node.left if value < node.value else node.right
        return False

    def insert(self, value: int) -> "ValueTree":
        if self.variant == "avl":
            return avl_insert(self, value)
        return bst_insert(self, value)

    def inorder(self) -> list[int]:
        out, stack, node = [], [], self.root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            out.append(node.value)
            node = node.right
        return out

    def height(self) -> int:
        return _h(self.root)

    def nodes(self) -> list[ValueNode]:
        out, todo = [], [self.root] if self.root else []
        while todo:
            node = todo.pop()
            out.append(node)
            todo.extend(c for c in (node.right, node.left) if c is not None)
        return out

    def right_frontier(self) -> list[int]:
        path, node = [], self.root
        while node is not None:
            path.append(node.value)
            node = node.right if node.right is not None else node.left
        return path

    def fringe(self) -> list[tuple[int, str]]:
        """Empty child slots as (parent value, side), left to right."""
        out = []

        def visit(node):
            if node is None:
                return
            if node.left is None:
                out.append((node.value, "left"))
            visit(node.left)
            visit(node.right)
            if node.right is None:
                out.append((node.value, "right"))

        visit(self.root)
        return out

    def render(self, fmt: str = "ascii") -> str:
        if fmt == "dot":
            return self._render_dot()
        if fmt != "ascii":
            raise ValueError(f"unknown render format {fmt!r}")
        frontier = set(self.right_frontier())
        lines = []

        def visit(node, depth, side):
            if node is None:
                return
            mark = " *" if node.value in frontier else ""
            lines.append(f"{'  ' * depth}{side}{node.value}{mark}")
            visit(node.left, depth + 1, "L:")
            visit(node.right, depth + 1, "R:")

        visit(self.root, 0, "")
        return "\n".join(lines) + ("\n" if lines else "")

    def _render_dot(self) -> str:
        nodes = self.nodes()
        edges = []
        for n in nodes:
            if n.left:
                edges.append((n.value, n.left.value, "L"))
            if n.right:
                edges.append((n.value, n.right.value, "R"))
        return dot_graph(self.variant, [(n.value, None) for n in nodes], edges, self.right_frontier())


def bst_insert(tree: ValueTree, value: int) -> ValueTree:
    """Attach `value` as a left or right daughter at the fringe."""
    new = ValueNode(value)
    if tree.root is None:
        tree.root = new
        tree.size = 1
        return tree
    path, node = [], tree.root
    while True:
        if value == node.value:
            raise DuplicateValue(value)
        path.append(node)
        side = "left" if value < node.value else "right"
        child = getattr(node, side)
        if child is None:
            setattr(node, side, new)
            break
        node = child
    for n in reversed(path):
        _fix(n)
    tree.size += 1
    return tree


def avl_insert(tree: ValueTree, value: int) -> ValueTree:
    """Fringe insertion followed by rotations on the way back up."""

    def insert(node: ValueNode | None) -> ValueNode:
        if node is None:
            return ValueNode(value)
        if value == node.value:
            raise DuplicateValue(value)
        if value < node.value:
            node.left = insert(node.left)
        else:
            node.right = insert(node.right)
        return _rebalance(node)

    tree.root = insert(tree.root)
    tree.size += 1
    return tree


def frontier_and_fringe(tree: ValueTree) -> dict[str, list]:
    if tree.root is None:
        raise ValueError("empty tree has no frontier")
    return {"right_frontier": tree.right_frontier(), "fringe": tree.fringe()}
