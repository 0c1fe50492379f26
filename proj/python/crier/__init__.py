"""Conformance-based concept drift detection for process event logs."""

from ._core import (
    EventLog,
    adjust_window,
    apply_pattern,
    bench,
    detect,
    discover,
    evaluate,
    expected_truth,
    fitness,
    generate,
    loanlike_tree,
    match,
    parse_csv,
    parse_xes,
    precision,
    read_log,
    regress,
    tree_text,
)

__all__ = [
    "EventLog",
    "adjust_window",
    "apply_pattern",
    "bench",
    "detect",
    "discover",
    "evaluate",
    "expected_truth",
    "fitness",
    "generate",
    "loanlike_tree",
    "match",
    "parse_csv",
    "parse_xes",
    "precision",
    "read_log",
    "regress",
    "tree_text",
]
