"""Resolution of deictic pronouns against the discourse tree.

A pronoun points at a segment proxy (the demonstratum) and refers, through
a referring function, to something of the sort its predication demands.
Unstressed pronouns may only point at proxies of right-frontier nodes;
stressed ones may reach any node.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .sorts import Sort
from .tree import ConveyedContent, DiscourseTree, TreeError

PRONOUNS = ("this", "that", "it", "zero")


class UnknownClause(TreeError):
    def __init__(self, clause_id: str):
        super().__init__(f"query point {clause_id!r} is not a clause of the discourse")
        self.clause_id = clause_id


class Inapplicable(Exception):
    pass


@dataclass(frozen=True)
class SegmentProxy:
    """Discourse entity standing in for one node's content.

    `frontier_index` is the node's position on the right frontier (root = 0),
    or None for an off-frontier node reached by a stressed pronoun. `end` is
    the discourse position of the node's last clause.
    """

    node: str
    span: tuple[str, ...]
    content: tuple[ConveyedContent, ...]
    frontier_index: int | None
    end: int

    @property
    def span_label(self) -> str:
        if len(self.span) == 1:
            return self.span[0]
        return f"{self.span[0]}..{self.span[-1]}"


@dataclass(frozen=True)
class ReferringFunction:
    """Maps a proxy to a referent of `output_sort`.

    Universal functions apply to every proxy and fall back to a synthesized
    gloss; the others apply only when the proxy conveys something of their
    output sort.
    """

    name: str
    output_sort: Sort
    universal: bool = False
    noun: str = ""

    def applicable(self, proxy: SegmentProxy) -> bool:
        return self.universal or any(c.sort == self.output_sort for c in proxy.content)

    def apply(self, proxy: SegmentProxy) -> tuple[str, Sort]:
        for c in proxy.content:
            if c.sort == self.output_sort:
                return c.gloss, self.output_sort
        if self.universal:
            return f"{self.noun} of {proxy.span_label}", self.output_sort
        raise Inapplicable(f"{self.name} does not apply to the proxy of {proxy.node}")


def registry_default() -> list[ReferringFunction]:
    return [
        ReferringFunction("event-of", Sort.EVENT_TOKEN),
        ReferringFunction("action-of", Sort.ACTION_TYPE),
        ReferringFunction("process-of", Sort.PROCESS),
        ReferringFunction("fact-of", Sort.FACT),
        ReferringFunction("situation-of", Sort.SITUATION),
        ReferringFunction("type-of-event", Sort.EVENT_TYPE),
        ReferringFunction("type-of-proposition", Sort.PROPOSITION_TYPE),
        ReferringFunction("speech-act-of", Sort.SPEECH_ACT, universal=True, noun="speech act"),
        ReferringFunction("assertion-of", Sort.PROPOSITION_TOKEN, universal=True, noun="assertion"),
        ReferringFunction("description-of", Sort.DESCRIPTION, universal=True, noun="description"),
    ]


@dataclass(frozen=True)
class DeixisQuery:
    after: str
    required_sort: Sort
    pronoun: str = "that"
    stressed: bool = False
    content_filter: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.required_sort, Sort):
            object.__setattr__(self, "required_sort", Sort.parse(self.required_sort))
        if self.pronoun not in PRONOUNS:
            raise ValueError(f"pronoun must be one of {PRONOUNS}, not {self.pronoun!r}")
        object.__setattr__(self, "content_filter", tuple(self.content_filter))

    def to_dict(self) -> dict[str, Any]:
        out = {
            "after": self.after,
            "pronoun": self.pronoun,
            "stressed": self.stressed,
            "required_sort": self.required_sort.value,
        }
        if self.content_filter:
            out["content_filter"] = list(self.content_filter)
        return out


@dataclass(frozen=True)
class Candidate:
    proxy: SegmentProxy
    function: str
    gloss: str
    sort: Sort
    universal: bool
    order: int = 0

    @property
    def node(self) -> str:
        return self.proxy.node

    @property
    def span(self) -> tuple[str, ...]:
        return self.proxy.span

    def to_dict(self) -> dict[str, Any]:
        return {
            "node": self.proxy.node,
            "span": list(self.proxy.span),
            "function": self.function,
            "gloss": self.gloss,
            "sort": self.sort.value,
            "on_frontier": self.proxy.frontier_index is not None,
        }


@dataclass(frozen=True)
class DiscourseEntity:
    id: str
    sort: Sort | None
    node: str
    function: str
    gloss: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "sort": self.sort.value if self.sort else None,
            "node": self.node,
            "function": self.function,
            "gloss": self.gloss,
        }


@dataclass
class DiscourseModel:
    """The entities a listener has so far: one per clause, plus one per ostensive act."""

    entities: list[DiscourseEntity] = field(default_factory=list)

    def _new_id(self) -> str:
        return f"e{len(self.entities) + 1}"

    def ingest(self, clause) -> DiscourseEntity:
        sort = clause.conveys[0].sort if clause.conveys else None
        entity = DiscourseEntity(self._new_id(), sort, clause.id, "clause", clause.text or clause.id)
        self.entities.append(entity)
        return entity

    def accommodate(self, referent: Candidate) -> DiscourseEntity:
        entity = DiscourseEntity(
            self._new_id(), referent.sort, referent.node, referent.function, referent.gloss
        )
        self.entities.append(entity)
        return entity


@dataclass(frozen=True)
class Resolution:
    query: DeixisQuery
    candidates: tuple[Candidate, ...]
    accommodated: DiscourseEntity | None = None

    @property
    def infelicitous(self) -> bool:
        return not self.candidates

    @property
    def top(self) -> Candidate | None:
        return self.candidates[0] if self.candidates else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "query": self.query.to_dict(),
            "candidates": [c.to_dict() for c in self.candidates],
            "accommodated": self.accommodated.to_dict() if self.accommodated else None,
        }


def _proxy(tree: DiscourseTree, node_id: str, frontier_index: int | None) -> SegmentProxy:
    span = tuple(tree.span(node_id))
    return SegmentProxy(
        node=node_id,
        span=span,
        content=tree.content(node_id),
        frontier_index=frontier_index,
        end=tree.clause_position(span[-1]),
    )


def candidate_demonstrata(tree: DiscourseTree, stressed: bool = False) -> list[SegmentProxy]:
    """Proxies a pronoun can point at, leaf-most frontier node first.

    Stressed pronouns also reach off-frontier nodes, which follow the
    frontier ones, most recently ended first.
    """
    frontier = tree.right_frontier()
    proxies = [_proxy(tree, n, i) for i, n in reversed(list(enumerate(frontier)))]
    if stressed:
        on = set(frontier)
        rest = [_proxy(tree, n, None) for n in tree.walk() if n not in on]
        rest.sort(key=lambda p: (-p.end, len(p.span)))
        proxies.extend(rest)
    return proxies


def _rank_key(c: Candidate):
    p = c.proxy
    if p.frontier_index is not None:
        place = (0, -p.frontier_index, 0)
    else:
        place = (1, -p.end, len(p.span))
    return place, c.universal, len(p.span), c.order


def rank(candidates: Iterable[Candidate]) -> list[Candidate]:
    """Default preference: deeper frontier nodes first, then content-derived
    referents before universal ones, then smaller spans."""
    return sorted(candidates, key=_rank_key)


def matches_filter(gloss: str, keywords: Sequence[str]) -> bool:
    low = gloss.lower()
    return all(k.lower() in low for k in keywords)


def resolve(
    tree: DiscourseTree,
    query: DeixisQuery,
    registry: Sequence[ReferringFunction] | None = None,
    model: DiscourseModel | None = None,
) -> Resolution:
    """All (proxy, function) readings that satisfy the query, ranked.

    An empty result means the predication fits no reachable region. When a
    model is given, the top reading is accommodated into it.
    """
    if query.after not in tree.clauses:
        raise UnknownClause(query.after)
    if registry is None:
        registry = registry_default()
    found = []
    for proxy, (order, fn) in itertools.product(
        candidate_demonstrata(tree, query.stressed), enumerate(registry)
    ):
        if fn.output_sort != query.required_sort or not fn.applicable(proxy):
            continue
        gloss, sort = fn.apply(proxy)
        if query.content_filter and not matches_filter(gloss, query.content_filter):
            continue
        found.append(Candidate(proxy, fn.name, gloss, sort, fn.universal, order))
    ranked = tuple(rank(found))
    accommodated = None
    if model is not None and ranked:
        accommodated = model.accommodate(ranked[0])
    return Resolution(query, ranked, accommodated)
