"""Matplotlib figures for replay snapshots, value trees and evaluation reports.

Everything here writes files; nothing is shown interactively.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FRONTIER_COLOR = "#d95f02"
PLAIN_COLOR = "#7570b3"
PASS_COLOR = "#1b9e77"
FAIL_COLOR = "#d95f02"


def layout(root: str, children: Mapping[str, Sequence[str]]) -> dict[str, tuple[float, float]]:
    """Leaves spread left to right in order; parents centred over their children."""
    pos: dict[str, tuple[float, float]] = {}
    next_x = [0.0]

    def place(node: str, depth: int) -> float:
        kids = children.get(node, [])
        if not kids:
            x = next_x[0]
            next_x[0] += 1.0
        else:
            xs = [place(k, depth + 1) for k in kids]
            x = sum(xs) / len(xs)
        pos[node] = (x, -float(depth))
        return x

    if root is not None:
        place(root, 0)
    return pos


def draw_tree(ax, root, children, frontier=(), title: str | None = None):
    pos = layout(root, children)
    marked = set(frontier)
    for parent, kids in children.items():
        for kid in kids:
            (x0, y0), (x1, y1) = pos[parent], pos[kid]
            on = parent in marked and kid in marked
            ax.plot(
                [x0, x1], [y0, y1],
                color=FRONTIER_COLOR if on else "0.6",
                lw=2.2 if on else 1.0,
                zorder=1,
            )
    for node, (x, y) in pos.items():
        on = node in marked
        ax.text(
            x, y, str(node),
            ha="center", va="center", fontsize=9,
            bbox=dict(
                boxstyle="round,pad=0.3",
                fc="white",
                ec=FRONTIER_COLOR if on else PLAIN_COLOR,
                lw=2.0 if on else 1.0,
            ),
            zorder=2,
        )
    xs = [p[0] for p in pos.values()] or [0.0]
    ys = [p[1] for p in pos.values()] or [0.0]
    ax.set_xlim(min(xs) - 0.8, max(xs) + 0.8)
    ax.set_ylim(min(ys) - 0.6, 0.6)
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=10)
    return ax


def save_snapshot(snapshot: Mapping[str, Any], path, title: str | None = None) -> Path:
    """Write one discourse-tree snapshot (root, children, frontier) to an image file."""
    n = max(1, len(snapshot["children"]))
    fig, ax = plt.subplots(figsize=(max(3.0, 0.7 * n), 2.8))
    draw_tree(ax, snapshot["root"], snapshot["children"], snapshot.get("frontier", ()), title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def save_replay_figures(trace, directory, stem: str = "step") -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for rec in trace.steps:
        snap = dict(rec.tree, frontier=rec.frontier)
        title = f"{trace.title}: after {rec.clause} ({rec.op['kind']})"
        out.append(save_snapshot(snap, directory / f"{stem}_{rec.index:02d}.png", title))
    return out


def value_tree_snapshot(tree) -> dict[str, Any]:
    children: dict[str, list[str]] = {}
    for node in tree.nodes():
        children[str(node.value)] = [str(c.value) for c in (node.left, node.right) if c is not None]
    root = str(tree.root.value) if tree.root else None
    return {"root": root, "children": children, "frontier": [str(v) for v in tree.right_frontier()]}


def save_value_trees(trees: Sequence[tuple[str, Any]], path) -> Path:
    """Side-by-side panels, one per (title, ValueTree)."""
    fig, axes = plt.subplots(1, len(trees), figsize=(3.6 * len(trees), 3.0), squeeze=False)
    for ax, (title, tree) in zip(axes[0], trees):
        snap = value_tree_snapshot(tree)
        draw_tree(ax, snap["root"], snap["children"], snap["frontier"], title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def save_report_figure(reports: Sequence[tuple[str, Any]], path) -> Path:
    """Stacked pass/fail bars, one per script."""
    names = [name for name, _ in reports]
    passed = [r.passed for _, r in reports]
    failed = [r.failed for _, r in reports]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.55 * len(names) + 1.5), 3.2))
    x = range(len(names))
    ax.bar(x, passed, color=PASS_COLOR, label="pass")
    ax.bar(x, failed, bottom=passed, color=FAIL_COLOR, label="fail")
    ax.set_xticks(list(x))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("queries")
    ax.legend(frameon=False, fontsize=8)
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
