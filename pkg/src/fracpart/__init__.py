"""Exact solvers for max-min ratio partitioning.

Partition n items, each with a positive integer profit and time, into m
groups; a group scores (profit sum)/(time sum) and a partition scores the
minimum group ratio.  This package solves the maximization problem and the
exact-split decision problem (can every group equal the global ratio S/T?)
with a layered pseudo-polynomial dynamic program, cross-checked by a
brute-force oracle, and builds the hardness-gadget instances that tie the
decision problem to Partition and 3-Partition.
"""

from .core import (
    Assignment,
    BadAssignment,
    BadGroupCount,
    GroupStats,
    Instance,
    LengthMismatch,
    NonPositiveEntry,
    RatioForm,
    ValidationError,
    evaluate,
    ratio_value_equal,
    total_ratio,
    validate_instance,
)
from .dp import (
    DEFAULT_STATE_BUDGET,
    DENSE_CELL_LIMIT,
    DpLayer,
    DpReport,
    MemoryBudgetExceeded,
    build_layers,
    dp_fp,
    dp_map,
)
from .oracle import (
    DEFAULT_ENUMERATION_BUDGET,
    BudgetExceeded,
    OracleResult,
    brute_force_fp,
    brute_force_map,
)
from .reductions import (
    GeneratedInstance,
    PartitionInstance,
    ReductionParams,
    ThreePartitionInstance,
    ceil_ratio_with_sqrt,
    generate_q2,
    generate_q4,
    lift_q2_certificate,
    lift_q4_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BadAssignment",
    "BadGroupCount",
    "BudgetExceeded",
    "DEFAULT_ENUMERATION_BUDGET",
    "DEFAULT_STATE_BUDGET",
    "DENSE_CELL_LIMIT",
    "DpLayer",
    "DpReport",
    "GeneratedInstance",
    "GroupStats",
    "Instance",
    "LengthMismatch",
    "MemoryBudgetExceeded",
    "NonPositiveEntry",
    "OracleResult",
    "PartitionInstance",
    "RatioForm",
    "ReductionParams",
    "ThreePartitionInstance",
    "ValidationError",
    "brute_force_fp",
    "brute_force_map",
    "build_layers",
    "ceil_ratio_with_sqrt",
    "dp_fp",
    "dp_map",
    "evaluate",
    "generate_q2",
    "generate_q4",
    "lift_q2_certificate",
    "lift_q4_certificate",
    "ratio_value_equal",
    "total_ratio",
    "validate_instance",
]
