import pytest
from hypothesis import given, settings, strategies as st

from deixis.resolver import (
    DeixisQuery,
    DiscourseModel,
    Inapplicable,
    UnknownClause,
    candidate_demonstrata,
    rank,
    registry_default,
    resolve,
)
from deixis.sorts import Sort
from deixis.tree import Clause, init_tree

from oracles import brute_force_resolve, build, naive_frontier

REGISTRY = {f.name: f for f in registry_default()}


def spans(proxies):
    return [list(p.span) for p in proxies]


def test_demonstrata_example_21(replayed):
    tree = replayed("ex21").tree
    assert spans(candidate_demonstrata(tree)) == [
        ["c5"],
        ["c4", "c5"],
        ["c2", "c3", "c4", "c5"],
        ["c1", "c2", "c3", "c4", "c5"],
    ]


def test_demonstrata_example_22(replayed):
    tree = replayed("ex22").tree
    assert spans(candidate_demonstrata(tree)) == [["c6"], [f"c{i}" for i in range(1, 7)]]


def test_demonstrata_single_node_and_stressed():
    tree = init_tree(Clause("c1"))
    assert len(candidate_demonstrata(tree)) == 1
    tree.adjoin("c1", Clause("c2"))
    stressed = candidate_demonstrata(tree, stressed=True)
    assert [p.node for p in stressed] == ["c2", "g1", "c1"]
    assert [p.frontier_index for p in stressed] == [1, 0, None]


def test_registry_applicability(replayed):
    tree21 = replayed("ex21").tree
    by_node = {p.node: p for p in candidate_demonstrata(tree21)}
    assert all(REGISTRY["speech-act-of"].applicable(p) for p in by_node.values())
    assert REGISTRY["event-of"].applicable(by_node["demise"])
    assert REGISTRY["event-of"].apply(by_node["demise"]) == (
        "the Folsum men's dying out after failing to adapt",
        Sort.EVENT_TOKEN,
    )

    tree22 = replayed("ex22").tree
    c6, root = candidate_demonstrata(tree22)
    assert not REGISTRY["action-of"].applicable(c6)
    with pytest.raises(Inapplicable):
        REGISTRY["action-of"].apply(c6)
    assert REGISTRY["action-of"].apply(root) == ("removing these difficult tumors", Sort.ACTION_TYPE)


def test_universal_functions_never_fail(replayed):
    tree = replayed("ex17").tree
    for proxy in candidate_demonstrata(tree, stressed=True):
        gloss, sort = REGISTRY["assertion-of"].apply(proxy)
        assert sort is Sort.PROPOSITION_TOKEN and gloss


def test_registry_output_sorts_cover_inventory():
    assert {f.output_sort for f in registry_default()} == set(Sort)
    universal = {f.name for f in registry_default() if f.universal}
    assert universal == {"speech-act-of", "assertion-of", "description-of"}


def test_example_20_readings(replayed):
    tree = replayed("ex20").tree
    a = resolve(tree, DeixisQuery("c2", Sort.ACTION_TYPE))
    b = resolve(tree, DeixisQuery("c2", Sort.EVENT_TYPE))
    assert a.top.gloss == "keeping his marriage from falling apart"
    assert b.top.gloss == "his marriage falling apart"


def test_example_17_infelicity_and_stress(replayed):
    tree = replayed("ex17", through="c11").tree
    plain = resolve(tree, DeixisQuery("c11", Sort.PROPOSITION_TOKEN, content_filter=("House A",)))
    assert plain.infelicitous and plain.candidates == ()
    loud = resolve(
        tree, DeixisQuery("c11", Sort.PROPOSITION_TOKEN, stressed=True, content_filter=("House A",))
    )
    assert list(loud.top.span) == ["c2", "c3", "c4", "c5"]


def test_example_16_ranking(replayed):
    tree = replayed("ex16", through="c4").tree
    res = resolve(tree, DeixisQuery("c4", Sort.PROPOSITION_TOKEN, "this", content_filter=("stereo fusion",)))
    nodes = [c.node for c in res.candidates]
    assert nodes.index("seg2") < nodes.index("seg1")
    assert res.top.node == "seg2"

    tree = replayed("ex16", through="c5").tree
    res = resolve(tree, DeixisQuery("c5", Sort.DESCRIPTION, "this", content_filter=("example",)))
    assert [c.node for c in res.candidates] == ["seg1"]


def test_rank_empty_and_order(replayed):
    assert rank([]) == []
    tree = replayed("ex05").tree
    res = resolve(tree, DeixisQuery("c2", Sort.EVENT_TOKEN))
    # the leaf's own event first, then the parent
    assert [c.node for c in res.candidates] == ["c2", "g1"]


def test_eventuality_before_universal_within_node():
    tree = init_tree(Clause("c1"))
    proxy = candidate_demonstrata(tree)[0]
    from deixis.resolver import Candidate

    uni = Candidate(proxy, "assertion-of", "x", Sort.PROPOSITION_TOKEN, True, 8)
    ev = Candidate(proxy, "event-of", "y", Sort.EVENT_TOKEN, False, 0)
    assert rank([uni, ev]) == [ev, uni]


def test_accommodation(replayed):
    tree = replayed("ex22").tree
    model = DiscourseModel()
    res = resolve(tree, DeixisQuery("c6", Sort.ACTION_TYPE, "this"), model=model)
    assert len(model.entities) == 1
    entity = model.entities[0]
    assert entity is res.accommodated
    assert entity.sort is Sort.ACTION_TYPE and entity.node == "job"
    again = resolve(tree, DeixisQuery("c6", Sort.ACTION_TYPE, "this"), model=model)
    assert len(model.entities) == 2 and again.accommodated.id != entity.id
    empty = resolve(tree, DeixisQuery("c6", Sort.ACTION_TYPE, content_filter=("zebra",)), model=model)
    assert empty.accommodated is None and len(model.entities) == 2


def test_unknown_query_point():
    with pytest.raises(UnknownClause):
        resolve(init_tree(Clause("c1")), DeixisQuery("c9", Sort.FACT))


def test_query_validation():
    with pytest.raises(ValueError):
        DeixisQuery("c1", Sort.FACT, pronoun="those")
    with pytest.raises(ValueError):
        DeixisQuery("c1", "miracle")
    assert DeixisQuery("c1", "fact").required_sort is Sort.FACT


def test_example_8_never_pairs_b_with_c(replayed):
    tree = replayed("ex08").tree
    for stressed in (False, True):
        for sort in Sort:
            for c in resolve(tree, DeixisQuery("c", sort, stressed=stressed)).candidates:
                assert list(c.span) != ["b", "c"]


# -- properties -------------------------------------------------------------

streams = st.lists(st.tuples(st.sampled_from(["attach", "adjoin"]), st.integers(0, 99)), max_size=12)


def _legal(stream):
    out, depth = [], 1
    for kind, pick in stream:
        idx = pick % depth
        out.append((kind, idx))
        depth = idx + 2
    return out


@settings(max_examples=150, deadline=None)
@given(streams, st.sampled_from(list(Sort)), st.sampled_from([(), ("alpha",), ("beta",), ("of",)]))
def test_resolution_properties(stream, sort, keywords):
    tree = build(_legal(stream))
    after = tree.clauses[-1]
    frontier = naive_frontier(tree)
    node_spans = {tuple(tree.span(n)) for n in tree.nodes}
    plain = resolve(tree, DeixisQuery(after, sort, content_filter=keywords))
    loud = resolve(tree, DeixisQuery(after, sort, stressed=True, content_filter=keywords))
    for c in plain.candidates:
        assert c.node in frontier
    for c in plain.candidates + loud.candidates:
        assert c.sort is sort
        assert tuple(c.span) in node_spans
    key = lambda c: (c.node, c.function, c.gloss)
    assert {key(c) for c in plain.candidates} <= {key(c) for c in loud.candidates}
    assert plain == resolve(tree, DeixisQuery(after, sort, content_filter=keywords))
    order = tree.clauses
    for res in (plain, loud):
        got = [(c.node, c.function, c.gloss, c.sort) for c in res.candidates]
        assert got == brute_force_resolve(tree, res.query, order)
