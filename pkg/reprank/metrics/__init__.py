"""Disparity, hypothesis-test and ranking-agreement metrics."""

from reprank.metrics.models import BoxSummary, DRCell, DRMatrix, LTResult
from reprank.metrics.stats import (
    box_summary,
    disparate_reputation,
    dr_matrix,
    group_box_summaries,
    kendall_tau,
    location_test,
    marginal_disparity,
    rmse,
)

__all__ = [
    # Models
    "BoxSummary",
    "DRCell",
    "DRMatrix",
    "LTResult",
    # Operations
    "disparate_reputation",
    "location_test",
    "dr_matrix",
    "kendall_tau",
    "rmse",
    "box_summary",
    "group_box_summaries",
    "marginal_disparity",
]
