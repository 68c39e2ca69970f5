import random

import pytest
from hypothesis import given, settings, strategies as st

from deixis.attention import (
    FocusStack,
    TargetNotInStack,
    equivalent,
    mirror_adjoin,
    mirror_attach,
    mirror_init,
)
from deixis.tree import Clause, TargetOffFrontier, UnknownTarget, init_tree

from oracles import clause_for


def test_mirror_init():
    stack = mirror_init("c1")
    assert stack.elements == ("c1",)
    assert equivalent(stack, init_tree(Clause("c1")))


def test_attach_pops_to_target_then_pushes():
    assert mirror_attach(FocusStack(("g1", "c2")), "g1", "c3").elements == ("g1", "c3")
    assert mirror_attach(mirror_init("c1"), "c1", "c2").elements == ("c1", "c2")


def test_adjoin_examples_12_13():
    s1 = mirror_adjoin(mirror_init("c_a"), "c_a", "g1", "c_b")
    assert s1.elements == ("g1", "c_b")
    s2 = mirror_adjoin(s1, "c_b", "g2", "c_c")
    assert s2.elements == ("g1", "g2", "c_c")
    s3 = mirror_adjoin(s2, "g2", "g3", "c_d")
    assert s3.elements == ("g1", "g3", "c_d")


def test_absent_target():
    with pytest.raises(TargetNotInStack):
        mirror_attach(FocusStack(("g1", "c2")), "c1", "c3")
    with pytest.raises(TargetNotInStack):
        mirror_adjoin(FocusStack(("g1", "c2")), "c1", "g2", "c3")


def test_stack_rejects_duplicates():
    with pytest.raises(ValueError):
        FocusStack(("a", "a"))


def test_example_11_lockstep():
    tree = init_tree(Clause("c1"))
    stack = mirror_init("c1")
    assert equivalent(stack, tree)
    parent, leaf = tree.adjoin("c1", Clause("c2"))
    stack = mirror_adjoin(stack, "c1", parent, leaf)
    assert equivalent(stack, tree)
    tree.attach("g1", Clause("c3"))
    stack = mirror_attach(stack, "g1", "c3")
    assert equivalent(stack, tree)
    assert stack.elements == ("g1", "c3")
    assert not equivalent(FocusStack(stack.elements[:-1]), tree)


def step_both(tree, stack, kind, target, clause):
    """Apply one op to tree and stack; returns (stack, tree error, stack error)."""
    tree_err = stack_err = None
    try:
        if kind == "attach":
            leaf = tree.attach(target, clause)
            stack = mirror_attach(stack, target, leaf)
        else:
            parent, leaf = tree.adjoin(target, clause)
            stack = mirror_adjoin(stack, target, parent, leaf)
    except (TargetOffFrontier, UnknownTarget) as exc:
        tree_err = exc
        try:
            if kind == "attach":
                mirror_attach(stack, target, clause.id)
            else:
                mirror_adjoin(stack, target, "p", clause.id)
        except TargetNotInStack as sexc:
            stack_err = sexc
    return stack, tree_err, stack_err


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["attach", "adjoin"]), st.booleans(), st.integers(0, 999)),
                max_size=40))
def test_lockstep_and_rejection_parity(stream):
    tree = init_tree(clause_for(0))
    stack = mirror_init("c0")
    popped: set[str] = set()
    for k, (kind, legal, pick) in enumerate(stream, 1):
        nodes = sorted(tree.nodes)
        pool = tree.right_frontier() if legal else nodes
        target = pool[pick % len(pool)]
        before = set(stack.elements)
        stack, tree_err, stack_err = step_both(tree, stack, kind, target, clause_for(k))
        assert (tree_err is None) == (stack_err is None)
        assert (tree_err is None) == (target in before)
        popped |= before - set(stack.elements)
        assert not popped & set(stack.elements)
        assert equivalent(stack, tree)
        assert len(stack) == len(tree.right_frontier())


def test_lockstep_seeded_long_run():
    rng = random.Random(7)
    tree = init_tree(clause_for(0))
    stack = mirror_init("c0")
    for k in range(1, 300):
        f = tree.right_frontier()
        stack, err, _ = step_both(tree, stack, rng.choice(["attach", "adjoin"]), rng.choice(f),
                                  clause_for(k))
        assert err is None and equivalent(stack, tree)
