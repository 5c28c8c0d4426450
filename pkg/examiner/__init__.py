"""
Cross-examiners: construction, axiom audit, witness separation and the Delta graph
"""
from .construct import (
    AXIOMS,
    CrossExaminer,
    axis_ray,
    ce_sizes,
    construct_ce_tree,
    construct_ce_z2,
    diagonal_staircase,
    l1_arc,
    mutation_suite,
)
from .delta import (
    ALTERNATING_CYCLE,
    GREEN,
    LABELS,
    RED,
    DeltaGraph,
    DeltaPath,
    ExhaustiveReport,
    GoodSubpath,
    delta_graph,
    delta_walks,
    find_good_subpath,
    good_subpath_exhaustive_check,
    good_windows,
    induced_delta_path,
)
from .validate import (
    NOT_SEPARATED,
    SEPARATED,
    SEPARATION_INDETERMINATE,
    AxiomResult,
    CEValidationReport,
    SeparationReport,
    ray_extent,
    validate_cross_examiner,
    witness_separation_check,
)

__all__ = [
    "ALTERNATING_CYCLE",
    "AXIOMS",
    "GREEN",
    "LABELS",
    "NOT_SEPARATED",
    "RED",
    "SEPARATED",
    "SEPARATION_INDETERMINATE",
    "AxiomResult",
    "CEValidationReport",
    "CrossExaminer",
    "DeltaGraph",
    "DeltaPath",
    "ExhaustiveReport",
    "GoodSubpath",
    "SeparationReport",
    "axis_ray",
    "ce_sizes",
    "construct_ce_tree",
    "construct_ce_z2",
    "delta_graph",
    "delta_walks",
    "diagonal_staircase",
    "find_good_subpath",
    "good_subpath_exhaustive_check",
    "good_windows",
    "induced_delta_path",
    "l1_arc",
    "mutation_suite",
    "ray_extent",
    "validate_cross_examiner",
    "witness_separation_check",
]
