"""Post-processing that makes reputations independent of sensitive attributes."""

from reprank.independence.models import (
    GroupStats,
    GroupSummary,
    MitigationResult,
    RecenteringOptions,
    TargetMode,
)
from reprank.independence.recentring import (
    group_stats,
    multi_fair,
    recenter,
    sequential_fair,
    single_fair,
)

__all__ = [
    # Models
    "GroupStats",
    "GroupSummary",
    "MitigationResult",
    "RecenteringOptions",
    "TargetMode",
    # Operations
    "group_stats",
    "recenter",
    "single_fair",
    "multi_fair",
    "sequential_fair",
]
