"""Independent recomputations used to check the library.

None of these call DiscourseTree.right_frontier/span/content or the
resolver's ranking; they work from the raw node table.
"""

from __future__ import annotations

import random

from deixis.resolver import DeixisQuery, registry_default
from deixis.sorts import Sort
from deixis.tree import Clause, ConveyedContent, DiscourseTree

SORTS = list(Sort)


def parent_map(tree: DiscourseTree) -> dict[str, str]:
    return {c: p for p, node in tree.nodes.items() for c in node.children}


def naive_frontier(tree: DiscourseTree) -> list[str]:
    """A node is on the frontier iff it is the root or the last child of a frontier node."""
    parents = parent_map(tree)
    roots = [n for n in tree.nodes if n not in parents]
    assert len(roots) == 1, roots

    def on(n):
        p = parents.get(n)
        return p is None or (tree.nodes[p].children[-1] == n and on(p))

    def depth(n):
        d = 0
        while n in parents:
            n, d = parents[n], d + 1
        return d

    return sorted((n for n in tree.nodes if on(n)), key=depth)


def naive_span(tree: DiscourseTree, node_id: str, order: list[str]) -> list[str]:
    """Clauses whose leaf-or-clause node lies under node_id, in discourse order."""
    parents = parent_map(tree)

    def under(n):
        while n is not None:
            if n == node_id:
                return True
            n = parents.get(n)
        return False

    return [c for c in order if under(c)]


def naive_content(tree: DiscourseTree, node_id: str) -> list[ConveyedContent]:
    node = tree.nodes[node_id]
    if node.override:
        return list(node.conveys)
    out = list(node.conveys)
    for child in node.children:
        for item in naive_content(tree, child):
            if item not in out:
                out.append(item)
    return out


def brute_force_resolve(tree: DiscourseTree, query: DeixisQuery, order: list[str]):
    """Every node x every registry function, filtered by reachability, sort and keywords.

    Returns (node, function, gloss, sort) tuples in the default preference order.
    """
    frontier = naive_frontier(tree)
    registry = registry_default()
    rows = []
    for node_id in tree.nodes:
        on = node_id in frontier
        if not on and not query.stressed:
            continue
        span = naive_span(tree, node_id, order)
        content = naive_content(tree, node_id)
        for idx, fn in enumerate(registry):
            if fn.output_sort != query.required_sort:
                continue
            own = [c.gloss for c in content if c.sort == fn.output_sort]
            if own:
                gloss = own[0]
            elif fn.universal:
                label = span[0] if len(span) == 1 else f"{span[0]}..{span[-1]}"
                gloss = f"{fn.noun} of {label}"
            else:
                continue
            if not all(k.lower() in gloss.lower() for k in query.content_filter):
                continue
            if on:
                place = (0, -frontier.index(node_id), 0)
            else:
                place = (1, -order.index(span[-1]), len(span))
            key = (place, fn.universal, len(span), idx)
            rows.append((key, (node_id, fn.name, gloss, fn.output_sort)))
    rows.sort(key=lambda r: r[0])
    return [r[1] for r in rows]


# -- operation streams ----------------------------------------------------

CONTENT_POOL = [
    ConveyedContent(Sort.EVENT_TOKEN, "an event alpha"),
    ConveyedContent(Sort.ACTION_TYPE, "an action beta"),
    ConveyedContent(Sort.FACT, "a fact gamma"),
    ConveyedContent(Sort.SITUATION, "a situation alpha"),
    ConveyedContent(Sort.PROPOSITION_TOKEN, "a claim beta"),
    ConveyedContent(Sort.DESCRIPTION, "a description gamma"),
    ConveyedContent(Sort.PROCESS, "a process alpha"),
    ConveyedContent(Sort.EVENT_TYPE, "an event type beta"),
]


def clause_for(k: int) -> Clause:
    """Deterministic clause k with 0-2 conveyed contents drawn from the pool."""
    n = k % 3
    conveys = tuple(CONTENT_POOL[(k * 3 + j) % len(CONTENT_POOL)] for j in range(n))
    return Clause(f"c{k}", f"clause {k}", conveys)


def override_for(k: int):
    """Every third adjoin overrides its parent's content."""
    if k % 3 == 0:
        return (CONTENT_POOL[k % len(CONTENT_POOL)],)
    return None


def random_ops(rng: random.Random, length: int, p_adjoin: float = 0.5):
    """A legal op stream as (kind, frontier position) pairs; positions index root-first."""
    ops = []
    depth = 1
    for _ in range(length):
        idx = rng.randrange(depth)
        if rng.random() < p_adjoin:
            ops.append(("adjoin", idx))
            depth = idx + 2
        else:
            ops.append(("attach", idx))
            depth = idx + 2
    return ops


def build(ops, overrides: bool = True) -> DiscourseTree:
    tree = DiscourseTree()
    tree.init(clause_for(0))
    for k, (kind, idx) in enumerate(ops, 1):
        target = tree.right_frontier()[idx]
        if kind == "attach":
            tree.attach(target, clause_for(k))
        else:
            tree.adjoin(target, clause_for(k), conveys=override_for(k) if overrides else None)
    return tree


def all_small_sequences(max_nodes: int = 8):
    """Every legal op stream whose tree stays within max_nodes (including the empty stream)."""
    out = []

    def rec(ops, size, depth):
        out.append(list(ops))
        for kind, cost in (("attach", 1), ("adjoin", 2)):
            if size + cost > max_nodes:
                continue
            for idx in range(depth):
                ops.append((kind, idx))
                rec(ops, size + cost, idx + 2)
                ops.pop()

    rec([], 1, 1)
    return out


# -- value trees -----------------------------------------------------------


def recomputed_height(node) -> int:
    if node is None:
        return 0
    return 1 + max(recomputed_height(node.left), recomputed_height(node.right))


def balance_factors(node):
    if node is None:
        return
    yield recomputed_height(node.left) - recomputed_height(node.right)
    yield from balance_factors(node.left)
    yield from balance_factors(node.right)


def bst_ordered(node, lo=None, hi=None) -> bool:
    if node is None:
        return True
    if (lo is not None and node.value <= lo) or (hi is not None and node.value >= hi):
        return False
    return bst_ordered(node.left, lo, node.value) and bst_ordered(node.right, node.value, hi)
