"""Iterative reputation engine and the arithmetic-average baseline."""

from reprank.engine.models import EngineConfig, EngineResult
from reprank.engine.reputation import (
    arithmetic_average,
    compute,
    update_rankings,
    update_reputations,
)

__all__ = [
    "EngineConfig",
    "EngineResult",
    "arithmetic_average",
    "compute",
    "update_rankings",
    "update_reputations",
]
