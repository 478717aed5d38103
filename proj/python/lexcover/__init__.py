"""Minimum lex-leader symmetry breaks for graphs via set cover."""

import json

from ._lexcover import (
    DEFAULT_BOUND,
    UsageError,
    apply_perm,
    build_matrix,
    canonical_ids,
    count_canonical,
    cover_ids,
    emit_cnf,
    export_opb,
    find_backbones_iterative,
    find_backbones_sat,
    get_dominated,
    is_backbone,
    nontrivial_permutations,
    num_positions,
    patterns,
    redundancy_ratio,
    refine,
    solve_matrix,
    transpositions,
    verify_break,
)
from ._lexcover import _run_pipeline

__all__ = [
    "DEFAULT_BOUND",
    "UsageError",
    "apply_perm",
    "build_matrix",
    "canonical_ids",
    "count_canonical",
    "cover_ids",
    "emit_cnf",
    "export_opb",
    "find_backbones_iterative",
    "find_backbones_sat",
    "get_dominated",
    "is_backbone",
    "nontrivial_permutations",
    "num_positions",
    "patterns",
    "redundancy_ratio",
    "refine",
    "solve",
    "solve_matrix",
    "transpositions",
    "verify_break",
]


def solve(n, bound=DEFAULT_BOUND, skip_iterative=False, state=None):
    """Run the full pipeline. Returns (report, break) as dicts."""
    report, spec = _run_pipeline(n, bound, skip_iterative, state)
    return json.loads(report), json.loads(spec)
