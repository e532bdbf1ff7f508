"""Exact toolkit for union-closed set families with small average overlap density.

Builds block-structured union-closed families implicitly, computes
abundance and average-overlap-density statistics in exact rational
arithmetic, validates the structured representation against brute-force
union closure at desk scale, and sweeps parameters to exhibit the
log-log-over-log scaling of the overlap density.
"""

__version__ = "0.1.0"

from .asymptotics import (
    BandReport,
    SweepRecord,
    optimal_s,
    plan_params,
    sweep,
    sweep_csv,
    sweep_row,
    theta_band,
)
from .construction import (
    BlockFamily,
    BlockMetrics,
    BlockParams,
    BoundReport,
    CountTable,
    build_block_family,
    count_table,
    exact_metrics,
    materialize,
    verify_bounds,
)
from .errors import (
    BadM,
    BadN,
    CapExceeded,
    DegenerateFamily,
    ElementOutOfRange,
    EmptyGenerators,
    Infeasible,
    InternalInconsistency,
    InvalidParams,
    NoNonemptySet,
    ParseError,
    PreconditionFailed,
    TooFewRecords,
    UclabError,
    UnknownName,
)
from .metrics import (
    AbundanceProfile,
    MetricsReport,
    abundance,
    abundance_profile,
    aod,
    average_abundance,
    knill_ratio,
    max_abundance,
    metrics_report,
    reference_family,
)
from .setfam import (
    DEFAULT_CAP,
    Family,
    SeparationReport,
    SetBits,
    augment_cosingletons,
    is_union_closed,
    parse_family,
    separates_points,
    serialize_family,
    union_closure,
)

__all__ = [
    "__version__",
    "AbundanceProfile",
    "BadM",
    "BadN",
    "BandReport",
    "BlockFamily",
    "BlockMetrics",
    "BlockParams",
    "BoundReport",
    "CapExceeded",
    "CountTable",
    "DEFAULT_CAP",
    "DegenerateFamily",
    "ElementOutOfRange",
    "EmptyGenerators",
    "Family",
    "Infeasible",
    "InternalInconsistency",
    "InvalidParams",
    "MetricsReport",
    "NoNonemptySet",
    "ParseError",
    "PreconditionFailed",
    "SeparationReport",
    "SetBits",
    "SweepRecord",
    "TooFewRecords",
    "UclabError",
    "UnknownName",
    "abundance",
    "abundance_profile",
    "aod",
    "augment_cosingletons",
    "average_abundance",
    "build_block_family",
    "count_table",
    "exact_metrics",
    "is_union_closed",
    "knill_ratio",
    "materialize",
    "max_abundance",
    "metrics_report",
    "optimal_s",
    "parse_family",
    "plan_params",
    "reference_family",
    "separates_points",
    "serialize_family",
    "sweep",
    "sweep_csv",
    "sweep_row",
    "theta_band",
    "union_closure",
    "verify_bounds",
]
