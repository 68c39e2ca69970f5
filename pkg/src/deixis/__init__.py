"""Discourse deixis over an incrementally built discourse segment tree."""

from .attention import FocusStack, TargetNotInStack, equivalent, mirror_adjoin, mirror_attach, mirror_init
from .corpus import (
    DiscourseScript,
    Report,
    ScriptError,
    Trace,
    dumps_script,
    evaluate,
    load_script,
    parse_script,
    replay,
)
from .resolver import (
    DeixisQuery,
    DiscourseModel,
    ReferringFunction,
    Resolution,
    SegmentProxy,
    candidate_demonstrata,
    rank,
    registry_default,
    resolve,
)
from .sorts import Sort
from .tree import (
    Clause,
    ConveyedContent,
    DiscourseTree,
    TargetOffFrontier,
    TreeError,
    UnknownTarget,
    init_tree,
)
from .treelab import ValueTree, avl_insert, bst_insert, frontier_and_fringe

__version__ = "0.1.0"
