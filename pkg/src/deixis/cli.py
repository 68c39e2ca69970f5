"""Command-line entry point: ``deixis replay | eval | resolve | treelab-demo``.

Exit status: 0 success, 1 gold mismatch, 2 script parse/validation error,
3 illegal operation during replay. Machine-readable output (JSON lines)
goes to stdout; human-readable tables go to stderr whenever JSON is on.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .corpus import ReplayError, ScriptError
from .resolver import PRONOUNS, DeixisQuery, UnknownClause, resolve
from .sorts import Sort
from .treelab import ValueTree, frontier_and_fringe

OK, MISMATCH, BAD_SCRIPT, ILLEGAL_OP = 0, 1, 2, 3


def _err(*args) -> None:
    print(*args, file=sys.stderr)


def _jsonl(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, sort_keys=True))


def find_script(name: str) -> Path:
    """A path as given, or else a shipped corpus script by file name or stem."""
    path = Path(name)
    if path.exists():
        return path
    base = corpus.default_corpus_dir()
    for candidate in (base / path.name, base / f"{path.name}.json"):
        if candidate.exists():
            return candidate
    return path


def _load(name: str):
    return corpus.load_script(find_script(name))


def cmd_replay(args) -> int:
    try:
        script = _load(args.script)
        trace = corpus.replay(script, through=args.at)
    except ScriptError as exc:
        _err(f"error: {exc}")
        return BAD_SCRIPT
    except UnknownClause as exc:
        _err(f"error: {exc}")
        return BAD_SCRIPT
    except ReplayError as exc:
        _err(f"illegal operation: {exc}")
        return ILLEGAL_OP

    human = sys.stderr if args.json else sys.stdout
    steps = trace.steps[-1:] if args.at else trace.steps
    for rec in steps:
        if args.json:
            _jsonl({"type": "step", **rec.to_dict()})
        op = rec.op["kind"] + (f" {rec.op['target']}" if "target" in rec.op else "")
        print(f"== step {rec.index}: {rec.clause} ({op})", file=human)
        print(trace_render(trace, rec, args.render), end="", file=human)
    for q in trace.queries:
        if args.json:
            _jsonl({"type": "query", **q.to_dict()})
        top = q.resolution.top
        desc = f"{top.function} on {top.proxy.span_label}: {top.gloss}" if top else "no candidates"
        tag = f" [{q.label}]" if q.label else ""
        print(f"-- query {q.index}{tag} after {q.resolution.query.after}: {desc}", file=human)

    if args.trace:
        Path(args.trace).write_text(trace.dumps(), encoding="utf-8")
    if args.figures:
        from .plotting import save_replay_figures

        paths = save_replay_figures(trace, args.figures)
        _err(f"wrote {len(paths)} figures to {args.figures}")
    return OK


def trace_render(trace, rec, fmt: str) -> str:
    if fmt == "ascii":
        return rec.render
    # dot output is rebuilt from the recorded structure, not the final tree
    from .render import dot_graph

    children = rec.tree["children"]
    edges = [(p, c, None) for p in children for c in children[p]]
    return dot_graph("discourse", [(n, None) for n in children], edges, rec.frontier)


def cmd_eval(args) -> int:
    directory = Path(args.corpus) if args.corpus else corpus.default_corpus_dir()
    if not directory.is_dir():
        _err(f"error: {directory} is not a directory")
        return BAD_SCRIPT
    paths = corpus.corpus_paths(directory)
    reports, parse_errors, replay_errors = [], [], []
    for path in paths:
        try:
            script = corpus.load_script(path)
            trace = corpus.replay(script)
        except ScriptError as exc:
            parse_errors.append((path.name, str(exc)))
            continue
        except ReplayError as exc:
            replay_errors.append((path.name, str(exc)))
            continue
        reports.append((path.stem, corpus.evaluate(trace, script)))

    total = sum(r.total for _, r in reports)
    failed = sum(r.failed for _, r in reports)
    for name, report in reports:
        for res in report.results:
            row = {"type": "result", "script": name, **res.to_dict()}
            if args.json:
                _jsonl(row)
            status = "PASS" if res.passed else "FAIL"
            label = res.label or f"q{res.index}"
            _err(f"{status}  {name:<12} {label:<28} {res.detail}")
    for name, msg in parse_errors:
        _err(f"ERROR {name}: {msg}")
    for name, msg in replay_errors:
        _err(f"ERROR {name}: illegal operation: {msg}")
    if total == 0:
        _err(f"warning: 0 queries in {directory}")
    _err(f"{total - failed}/{total} queries passed across {len(reports)} scripts")
    if args.json:
        _jsonl({"type": "summary", "scripts": len(reports), "total": total,
                "passed": total - failed, "failed": failed})
    if args.figures and reports:
        from .plotting import save_report_figure

        Path(args.figures).mkdir(parents=True, exist_ok=True)
        out = save_report_figure(reports, Path(args.figures) / "report.png")
        _err(f"wrote {out}")
    if parse_errors:
        return BAD_SCRIPT
    if replay_errors:
        return ILLEGAL_OP
    return MISMATCH if failed else OK


def cmd_resolve(args) -> int:
    try:
        script = _load(args.script)
        trace = corpus.replay(script, through=args.after, run_queries=False)
        query = DeixisQuery(
            args.after, Sort.parse(args.sort), args.pronoun, args.stressed, tuple(args.filter)
        )
        res = resolve(trace.tree, query)
    except (ScriptError, UnknownClause, ValueError) as exc:
        _err(f"error: {exc}")
        return BAD_SCRIPT
    except ReplayError as exc:
        _err(f"illegal operation: {exc}")
        return ILLEGAL_OP
    for rank, cand in enumerate(res.candidates, 1):
        _jsonl({"rank": rank, **cand.to_dict()})
    if not res.candidates:
        _err("no candidates: the predication fits no region in focus")
    return OK


def cmd_treelab(args) -> int:
    try:
        values = [int(v) for v in args.values.split(",") if v.strip()]
    except ValueError:
        _err(f"error: --values must be comma-separated integers, got {args.values!r}")
        return BAD_SCRIPT
    bst, avl = ValueTree("bst"), ValueTree("avl")
    human = sys.stderr if args.json else sys.stdout
    for v in values:
        try:
            bst.insert(v)
            avl.insert(v)
        except ValueError as exc:
            _err(f"error: duplicate value {exc}")
            return BAD_SCRIPT
        for tree in (bst, avl):
            ff = frontier_and_fringe(tree)
            if args.json:
                _jsonl({"insert": v, "variant": tree.variant, "root": tree.root.value,
                        "inorder": tree.inorder(), "right_frontier": ff["right_frontier"],
                        "fringe": [list(f) for f in ff["fringe"]]})
            print(f"== {tree.variant} after inserting {v}", file=human)
            print(tree.render(args.render), end="", file=human)
            print(f"   right frontier {ff['right_frontier']}, {len(ff['fringe'])} fringe slots",
                  file=human)
    if args.figures and values:
        from .plotting import save_value_trees

        Path(args.figures).mkdir(parents=True, exist_ok=True)
        out = save_value_trees([("BST", bst), ("AVL", avl)], Path(args.figures) / "treelab.png")
        _err(f"wrote {out}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deixis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("replay", help="replay a script, printing tree snapshots")
    p.add_argument("script", help="script path, or the name of a shipped script (e.g. ex12)")
    p.add_argument("--trace", metavar="OUT", help="write the JSON trace here")
    p.add_argument("--render", choices=("ascii", "dot"), default="ascii")
    p.add_argument("--at", metavar="CLAUSE", help="stop after this clause and show only its snapshot")
    p.add_argument("--json", action="store_true", help="JSON lines on stdout")
    p.add_argument("--figures", metavar="DIR", help="save one PNG per step into DIR")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("eval", help="evaluate every script in a corpus directory against its golds")
    p.add_argument("corpus", nargs="?", help="directory of scripts (default: $DEIXIS_CORPUS or shipped)")
    p.add_argument("--json", action="store_true", help="JSON lines on stdout")
    p.add_argument("--figures", metavar="DIR", help="save a pass/fail chart into DIR")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("resolve", help="resolve one deictic pronoun after a given clause")
    p.add_argument("script")
    p.add_argument("--after", required=True, metavar="CLAUSE")
    p.add_argument("--sort", required=True, choices=[s.value for s in Sort])
    p.add_argument("--filter", action="append", default=[], metavar="KEYWORD")
    p.add_argument("--stressed", action="store_true")
    p.add_argument("--pronoun", choices=PRONOUNS, default="this")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("treelab-demo", help="grow a BST and an AVL tree side by side")
    p.add_argument("--values", default="40,20,60,50,25")
    p.add_argument("--render", choices=("ascii", "dot"), default="ascii")
    p.add_argument("--json", action="store_true")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_treelab)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
