"""Focus-space stack kept in lockstep with the discourse tree.

The stack holds node ids, bottom first. Attach pops down to the target
and pushes the new leaf; adjoin pops through the target and pushes the
new parent followed by the leaf. Read bottom to top, the stack should
always equal the tree's right frontier read root to leaf.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tree import DiscourseTree


class TargetNotInStack(Exception):
    def __init__(self, target: str, stack: "FocusStack"):
        super().__init__(f"{target!r} is not on the focus stack {list(stack.elements)}")
        self.target = target


@dataclass(frozen=True)
class FocusStack:
    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValueError(f"duplicate focus spaces in {self.elements}")

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self.elements

    @property
    def top(self) -> str:
        return self.elements[-1]

    def _index(self, target: str) -> int:
        try:
            return self.elements.index(target)
        except ValueError:
            raise TargetNotInStack(target, self) from None

    def pop_to(self, target: str) -> "FocusStack":
        """Pop until `target` is on top."""
        return FocusStack(self.elements[: self._index(target) + 1])

    def pop_through(self, target: str) -> "FocusStack":
        """Pop everything down to and including `target`."""
        return FocusStack(self.elements[: self._index(target)])

    def push(self, *items: str) -> "FocusStack":
        return FocusStack(self.elements + items)


def mirror_init(leaf: str) -> FocusStack:
    return FocusStack((leaf,))


def mirror_attach(stack: FocusStack, target: str, leaf: str) -> FocusStack:
    return stack.pop_to(target).push(leaf)


def mirror_adjoin(stack: FocusStack, target: str, parent: str, leaf: str) -> FocusStack:
    return stack.pop_through(target).push(parent, leaf)


def equivalent(stack: FocusStack, tree: DiscourseTree) -> bool:
    return list(stack.elements) == tree.right_frontier()
