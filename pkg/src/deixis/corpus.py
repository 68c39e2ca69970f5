"""Discourse scripts: parsing, replay against tree and stack, and gold evaluation.

A script is a JSON document::

    {
      "title": "...",
      "comment": "...",                      # optional
      "steps": [
        {"clause": {"id": "c1", "text": "...", "conveys": [{"sort": ..., "gloss": ...}]},
         "op": {"kind": "init"}},
        {"clause": {...}, "op": {"kind": "attach", "target": "c1"}},
        {"clause": {...}, "op": {"kind": "adjoin", "target": "c1", "label": "g1", "conveys": [...]}}
      ],
      "queries": [
        {"after": "c2", "pronoun": "that", "stressed": false, "required_sort": "event-token",
         "content_filter": ["..."], "label": "...",
         "gold": {"accept": [{"span": ["c1", "c2"], "sort": "event-token", "gloss_substring": "..."}],
                  "mode": "top"}}
      ]
    }

An empty ``accept`` list is an infelicity gold: the query must find nothing.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterator

from .attention import (
    FocusStack,
    TargetNotInStack,
    equivalent,
    mirror_adjoin,
    mirror_attach,
    mirror_init,
)
from .resolver import (
    DeixisQuery,
    DiscourseModel,
    Resolution,
    UnknownClause,
    registry_default,
    resolve,
)
from .sorts import Sort
from .tree import Clause, ConveyedContent, DiscourseTree, TreeError, generated_label

OP_KINDS = ("init", "attach", "adjoin")
GOLD_MODES = ("top", "set")


class ScriptError(Exception):
    """A script that cannot be parsed or fails validation."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ScriptSyntaxError(ScriptError):
    pass


class UnknownSort(ScriptError):
    pass


class DanglingTarget(ScriptError):
    pass


class DuplicateClauseId(ScriptError):
    pass


class ReplayError(Exception):
    """An operation that failed during replay, tagged with its step."""

    def __init__(self, step: int, clause_id: str, cause: Exception):
        super().__init__(f"step {step} (clause {clause_id}): {cause}")
        self.step = step
        self.clause_id = clause_id
        self.cause = cause


class EquivalenceViolation(ReplayError):
    pass


# -- script data ---------------------------------------------------------


@dataclass(frozen=True)
class TreeOp:
    kind: str
    target: str | None = None
    label: str | None = None
    conveys: tuple[ConveyedContent, ...] | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind}
        if self.target is not None:
            out["target"] = self.target
        if self.label is not None:
            out["label"] = self.label
        if self.conveys is not None:
            out["conveys"] = [c.to_dict() for c in self.conveys]
        return out


@dataclass(frozen=True)
class Step:
    clause: Clause
    op: TreeOp

    def to_dict(self) -> dict[str, Any]:
        return {
            "clause": {
                "id": self.clause.id,
                "text": self.clause.text,
                "conveys": [c.to_dict() for c in self.clause.conveys],
            },
            "op": self.op.to_dict(),
        }


@dataclass(frozen=True)
class GoldEntry:
    span: tuple[str, ...]
    sort: Sort
    gloss_substring: str = ""

    def matches(self, candidate) -> bool:
        return (
            tuple(candidate.span) == self.span
            and candidate.sort == self.sort
            and self.gloss_substring.lower() in candidate.gloss.lower()
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "span": list(self.span),
            "sort": self.sort.value,
            "gloss_substring": self.gloss_substring,
        }


@dataclass(frozen=True)
class Gold:
    accept: tuple[GoldEntry, ...]
    mode: str = "top"

    @property
    def infelicitous(self) -> bool:
        return not self.accept

    def to_dict(self) -> dict[str, Any]:
        return {"accept": [g.to_dict() for g in self.accept], "mode": self.mode}


@dataclass(frozen=True)
class ScriptQuery:
    query: DeixisQuery
    gold: Gold | None = None
    label: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out = self.query.to_dict()
        if self.label is not None:
            out["label"] = self.label
        if self.gold is not None:
            out["gold"] = self.gold.to_dict()
        return out


@dataclass(frozen=True)
class DiscourseScript:
    title: str
    steps: tuple[Step, ...]
    queries: tuple[ScriptQuery, ...] = ()
    comment: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"title": self.title}
        if self.comment is not None:
            out["comment"] = self.comment
        out["steps"] = [s.to_dict() for s in self.steps]
        out["queries"] = [q.to_dict() for q in self.queries]
        return out


# -- parsing -------------------------------------------------------------


def _require(data: Any, key: str, kind: type | tuple, where: str):
    if not isinstance(data, dict):
        raise ScriptSyntaxError(f"{where}: expected an object")
    if key not in data:
        raise ScriptSyntaxError(f"{where}: missing key {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise ScriptSyntaxError(f"{where}: {key!r} has the wrong type")
    return value


def _check_keys(data: dict, allowed: set[str], where: str) -> None:
    extra = set(data) - allowed
    if extra:
        raise ScriptSyntaxError(f"{where}: unexpected keys {sorted(extra)}")


def _sort(tag: Any, where: str) -> Sort:
    if not isinstance(tag, str):
        raise ScriptSyntaxError(f"{where}: sort must be a string")
    try:
        return Sort.parse(tag)
    except ValueError as exc:
        raise UnknownSort(f"{where}: {exc}") from None


def _conveys(items: Any, where: str) -> tuple[ConveyedContent, ...]:
    if not isinstance(items, list):
        raise ScriptSyntaxError(f"{where}: conveys must be a list")
    out = []
    for i, item in enumerate(items):
        loc = f"{where} conveys[{i}]"
        _check_keys(item if isinstance(item, dict) else {}, {"sort", "gloss"}, loc)
        sort = _sort(_require(item, "sort", str, loc), loc)
        gloss = _require(item, "gloss", str, loc)
        if not gloss.strip():
            raise ScriptSyntaxError(f"{loc}: empty gloss")
        out.append(ConveyedContent(sort, gloss))
    return tuple(out)


def _parse_step(i: int, raw: Any) -> Step:
    where = f"steps[{i}]"
    if not isinstance(raw, dict):
        raise ScriptSyntaxError(f"{where}: expected an object")
    _check_keys(raw, {"clause", "op"}, where)
    rc = _require(raw, "clause", dict, where)
    _check_keys(rc, {"id", "text", "conveys"}, f"{where} clause")
    cid = _require(rc, "id", str, f"{where} clause")
    if not cid:
        raise ScriptSyntaxError(f"{where}: empty clause id")
    text = rc.get("text", "")
    if not isinstance(text, str):
        raise ScriptSyntaxError(f"{where} clause: 'text' has the wrong type")
    clause = Clause(cid, text, _conveys(rc.get("conveys", []), f"{where} clause"))

    ro = _require(raw, "op", dict, where)
    _check_keys(ro, {"kind", "target", "label", "conveys"}, f"{where} op")
    kind = _require(ro, "kind", str, f"{where} op")
    if kind not in OP_KINDS:
        raise ScriptSyntaxError(f"{where} op: unknown kind {kind!r}")
    if kind == "init":
        if set(ro) != {"kind"}:
            raise ScriptSyntaxError(f"{where} op: init takes no arguments")
        return Step(clause, TreeOp("init"))
    target = _require(ro, "target", str, f"{where} op")
    if kind == "attach":
        if set(ro) - {"kind", "target"}:
            raise ScriptSyntaxError(f"{where} op: attach takes only a target")
        return Step(clause, TreeOp("attach", target))
    label = ro.get("label")
    if label is not None and (not isinstance(label, str) or not label):
        raise ScriptSyntaxError(f"{where} op: label must be a non-empty string")
    conveys = _conveys(ro["conveys"], f"{where} op") if "conveys" in ro else None
    return Step(clause, TreeOp("adjoin", target, label, conveys))


def _parse_query(i: int, raw: Any) -> ScriptQuery:
    where = f"queries[{i}]"
    if not isinstance(raw, dict):
        raise ScriptSyntaxError(f"{where}: expected an object")
    _check_keys(
        raw,
        {"after", "pronoun", "stressed", "required_sort", "content_filter", "gold", "label"},
        where,
    )
    after = _require(raw, "after", str, where)
    sort = _sort(_require(raw, "required_sort", str, where), where)
    pronoun = raw.get("pronoun", "that")
    stressed = raw.get("stressed", False)
    filt = raw.get("content_filter", [])
    if not isinstance(stressed, bool):
        raise ScriptSyntaxError(f"{where}: 'stressed' must be a boolean")
    if not isinstance(filt, list) or not all(isinstance(k, str) and k for k in filt):
        raise ScriptSyntaxError(f"{where}: 'content_filter' must be a list of strings")
    label = raw.get("label")
    if label is not None and not isinstance(label, str):
        raise ScriptSyntaxError(f"{where}: 'label' must be a string")
    try:
        query = DeixisQuery(after, sort, pronoun, stressed, tuple(filt))
    except ValueError as exc:
        raise ScriptSyntaxError(f"{where}: {exc}") from None

    gold = None
    if "gold" in raw:
        rg = raw["gold"]
        _check_keys(rg if isinstance(rg, dict) else {}, {"accept", "mode"}, f"{where} gold")
        accept = []
        for j, ra in enumerate(_require(rg, "accept", list, f"{where} gold")):
            loc = f"{where} gold accept[{j}]"
            _check_keys(ra if isinstance(ra, dict) else {}, {"span", "sort", "gloss_substring"}, loc)
            span = _require(ra, "span", list, loc)
            if not span or not all(isinstance(s, str) for s in span):
                raise ScriptSyntaxError(f"{loc}: span must be a non-empty list of clause ids")
            gsub = ra.get("gloss_substring", "")
            if not isinstance(gsub, str):
                raise ScriptSyntaxError(f"{loc}: 'gloss_substring' must be a string")
            accept.append(GoldEntry(tuple(span), _sort(_require(ra, "sort", str, loc), loc), gsub))
        mode = rg.get("mode", "top")
        if mode not in GOLD_MODES:
            raise ScriptSyntaxError(f"{where} gold: mode must be one of {GOLD_MODES}")
        gold = Gold(tuple(accept), mode)
    return ScriptQuery(query, gold, label)


def _validate(script: DiscourseScript) -> None:
    """Referential integrity: one leading init, unique clause ids, targets that will exist."""
    labels: set[str] = set()
    clause_ids: list[str] = []
    counter = 0
    for i, step in enumerate(script.steps):
        cid = step.clause.id
        if cid in clause_ids:
            raise DuplicateClauseId(f"steps[{i}]: clause id {cid!r} used twice")
        if cid in labels:
            raise DuplicateClauseId(f"steps[{i}]: clause id {cid!r} collides with a parent label")
        if (i == 0) != (step.op.kind == "init"):
            raise ScriptError(f"steps[{i}]: exactly the first step must be an init")
        if step.op.kind != "init" and step.op.target not in labels:
            raise DanglingTarget(
                f"steps[{i}]: target {step.op.target!r} names no node created so far"
            )
        if step.op.kind == "adjoin":
            if step.op.label is None:
                label, counter = generated_label(labels | {cid}, counter)
            else:
                if step.op.label in labels or step.op.label == cid:
                    raise ScriptError(f"steps[{i}]: parent label {step.op.label!r} already in use")
                label, counter = step.op.label, counter + 1
            labels.add(label)
        labels.add(cid)
        clause_ids.append(cid)
    for i, sq in enumerate(script.queries):
        if sq.query.after not in clause_ids:
            raise ScriptError(f"queries[{i}]: 'after' names unknown clause {sq.query.after!r}")
        if sq.gold:
            for entry in sq.gold.accept:
                unknown = [c for c in entry.span if c not in clause_ids]
                if unknown:
                    raise ScriptError(f"queries[{i}]: gold span names unknown clauses {unknown}")


def _line_of(text: str, needle: str) -> int | None:
    idx = text.find(needle)
    return text.count("\n", 0, idx) + 1 if idx >= 0 else None


def parse_script(text: str) -> DiscourseScript:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScriptSyntaxError(exc.msg, line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ScriptSyntaxError("top level must be an object", line=1)
    try:
        _check_keys(data, {"title", "comment", "steps", "queries"}, "script")
        title = _require(data, "title", str, "script")
        comment = data.get("comment")
        if comment is not None and not isinstance(comment, str):
            raise ScriptSyntaxError("script: 'comment' must be a string")
        raw_steps = _require(data, "steps", list, "script")
        raw_queries = data.get("queries", [])
        if not isinstance(raw_queries, list):
            raise ScriptSyntaxError("script: 'queries' must be a list")
        if not raw_steps:
            raise ScriptError("script has no steps")
        script = DiscourseScript(
            title,
            tuple(_parse_step(i, s) for i, s in enumerate(raw_steps)),
            tuple(_parse_query(i, q) for i, q in enumerate(raw_queries)),
            comment,
        )
        _validate(script)
    except ScriptError as exc:
        if exc.line is None:
            # point at the offending clause/target when the message names one
            for token in str(exc).split("'")[1::2]:
                line = _line_of(text, f'"{token}"')
                if line is not None:
                    exc.line = line
                    break
        raise
    return script


def dumps_script(script: DiscourseScript) -> str:
    return json.dumps(script.to_dict(), indent=2, ensure_ascii=False) + "\n"


def load_script(path: str | os.PathLike) -> DiscourseScript:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ScriptError(f"cannot read {path}: {exc}") from None
    return parse_script(text)


# -- replay --------------------------------------------------------------


@dataclass
class StepRecord:
    index: int
    clause: str
    op: dict[str, Any]
    created: list[str]
    tree: dict[str, Any]
    frontier: list[str]
    stack: list[str]
    equivalent: bool
    render: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "clause": self.clause,
            "op": self.op,
            "created": self.created,
            "tree": {"root": self.tree["root"], "children": self.tree["children"]},
            "frontier": self.frontier,
            "stack": self.stack,
            "equivalent": self.equivalent,
            "render": self.render,
        }


@dataclass
class QueryRecord:
    index: int
    label: str | None
    step: int
    resolution: Resolution

    def to_dict(self) -> dict[str, Any]:
        out = {"index": self.index, "step": self.step}
        if self.label is not None:
            out["label"] = self.label
        out.update(self.resolution.to_dict())
        return out


@dataclass
class Trace:
    title: str
    steps: list[StepRecord] = field(default_factory=list)
    queries: list[QueryRecord] = field(default_factory=list)
    tree: DiscourseTree = field(default_factory=DiscourseTree, repr=False)
    stack: FocusStack | None = field(default=None, repr=False)
    model: DiscourseModel = field(default_factory=DiscourseModel, repr=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "steps": [s.to_dict() for s in self.steps],
            "queries": [q.to_dict() for q in self.queries],
            "entities": [e.to_dict() for e in self.model.entities],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _apply(tree: DiscourseTree, stack: FocusStack | None, step: Step):
    clause, op = step.clause, step.op
    if op.kind == "init":
        if stack is not None:
            raise ScriptError("init after the tree already has a root")
        tree.init(clause)
        return [clause.id], mirror_init(clause.id)
    if op.kind == "attach":
        leaf = tree.attach(op.target, clause)
        return [leaf], mirror_attach(stack, op.target, leaf)
    parent, leaf = tree.adjoin(op.target, clause, op.label, op.conveys)
    return [parent, leaf], mirror_adjoin(stack, op.target, parent, leaf)


def replay(
    script: DiscourseScript,
    through: str | None = None,
    run_queries: bool = True,
    registry=None,
) -> Trace:
    """Apply every step to a tree and its focus stack, resolving queries as their clause arrives.

    With `through`, stop after that clause. Raises ReplayError for an illegal
    operation and EquivalenceViolation if the stack ever drifts from the frontier.
    """
    if through is not None and through not in [s.clause.id for s in script.steps]:
        raise UnknownClause(through)
    registry = registry if registry is not None else registry_default()
    trace = Trace(script.title)
    pending: dict[str, list[tuple[int, ScriptQuery]]] = {}
    for qi, sq in enumerate(script.queries):
        pending.setdefault(sq.query.after, []).append((qi, sq))

    for i, step in enumerate(script.steps):
        try:
            created, trace.stack = _apply(trace.tree, trace.stack, step)
        except (TreeError, TargetNotInStack, ScriptError) as exc:
            raise ReplayError(i, step.clause.id, exc) from exc
        ok = equivalent(trace.stack, trace.tree)
        if not ok:
            raise EquivalenceViolation(
                i,
                step.clause.id,
                AssertionError(
                    f"stack {list(trace.stack.elements)} != frontier {trace.tree.right_frontier()}"
                ),
            )
        trace.model.ingest(step.clause)
        snap = trace.tree.snapshot()
        trace.steps.append(
            StepRecord(
                index=i,
                clause=step.clause.id,
                op=step.op.to_dict(),
                created=created,
                tree=snap,
                frontier=snap["frontier"],
                stack=list(trace.stack.elements),
                equivalent=ok,
                render=trace.tree.render("ascii"),
            )
        )
        if run_queries:
            for qi, sq in pending.get(step.clause.id, []):
                res = resolve(trace.tree, sq.query, registry, trace.model)
                trace.queries.append(QueryRecord(qi, sq.label, i, res))
        if step.clause.id == through:
            break
    return trace


# -- evaluation ----------------------------------------------------------


@dataclass
class QueryResult:
    index: int
    label: str | None
    passed: bool
    matched: dict[str, Any] | None
    detail: str
    candidates: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "label": self.label,
            "passed": self.passed,
            "matched": self.matched,
            "detail": self.detail,
            "candidates": self.candidates,
        }


@dataclass
class Report:
    title: str
    results: list[QueryResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "results": [r.to_dict() for r in self.results],
            "passed": self.passed,
            "failed": self.failed,
            "total": self.total,
        }


def _judge(sq: ScriptQuery, res: Resolution) -> tuple[bool, dict | None, str]:
    gold = sq.gold
    if gold is None:
        return True, None, "no gold"
    if gold.infelicitous:
        if res.infelicitous:
            return True, None, "infelicitous: no candidates, as expected"
        return False, None, f"expected no candidates, got {len(res.candidates)} (top {res.top.gloss!r})"
    pool = res.candidates if gold.mode == "set" else res.candidates[:1]
    for cand in pool:
        for entry in gold.accept:
            if entry.matches(cand):
                return True, entry.to_dict(), f"{cand.function} on {cand.proxy.span_label}: {cand.gloss}"
    if not res.candidates:
        return False, None, "no candidates (infelicitous), expected a referent"
    top = res.top
    return (
        False,
        None,
        f"top candidate {top.function} on {top.proxy.span_label} ({top.sort.value}: {top.gloss!r}) "
        "matches no gold entry",
    )


def evaluate(trace: Trace, script: DiscourseScript) -> Report:
    report = Report(script.title)
    by_index = {q.index: q for q in trace.queries}
    for qi, sq in enumerate(script.queries):
        rec = by_index.get(qi)
        if rec is None:
            report.results.append(QueryResult(qi, sq.label, False, None, "query was not resolved", 0))
            continue
        passed, matched, detail = _judge(sq, rec.resolution)
        report.results.append(
            QueryResult(qi, sq.label, passed, matched, detail, len(rec.resolution.candidates))
        )
    return report


# -- shipped corpus ------------------------------------------------------


def shipped_corpus_dir() -> Path:
    return Path(str(resources.files("deixis") / "corpus_data"))


def default_corpus_dir() -> Path:
    env = os.environ.get("DEIXIS_CORPUS")
    return Path(env) if env else shipped_corpus_dir()


def corpus_paths(directory: str | os.PathLike) -> list[Path]:
    return sorted(Path(directory).glob("*.json"), key=lambda p: p.name)


def iter_corpus(directory: str | os.PathLike) -> Iterator[tuple[Path, DiscourseScript]]:
    for path in corpus_paths(directory):
        yield path, load_script(path)
