from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from reprank.base import GroupPartition, RankingVector, ReputationVector


class TargetMode(StrEnum):
    """How the common recentring targets are chosen."""

    # Smallest group mean and smallest group standard deviation
    MIN = "min"
    # Mean and standard deviation over every partitioned user
    GLOBAL = "global"


class RecenteringOptions(BaseModel):
    """Variant of the recentring transform.

    The defaults (minimum targets, sample standard deviation) keep every
    recentred reputation inside ]0,1]. ``TargetMode.GLOBAL`` with
    ``ddof=0`` gives the global-mean, population-std reading, useful for
    sensitivity analysis.
    """

    model_config = ConfigDict(frozen=True)

    target: TargetMode = TargetMode.MIN
    ddof: int = Field(1, ge=0, le=1)

    @property
    def variant(self) -> str:
        return f"{self.target.value}-targets/ddof={self.ddof}"


@dataclass(frozen=True)
class GroupSummary:
    mean: float
    std: float
    size: int
    # Size-1 group: std is undefined and reported as 0
    degenerate: bool = False


@dataclass(frozen=True)
class GroupStats:
    """Per-group reputation moments and the common targets."""

    groups: dict[tuple[str, ...], GroupSummary]
    target_mean: float
    target_std: float
    options: RecenteringOptions

    def means(self) -> dict[tuple[str, ...], float]:
        return {key: summary.mean for key, summary in self.groups.items()}


@dataclass(frozen=True)
class MitigationResult:
    """Reputations and rankings after one or more recentring passes.

    ``partitions`` and ``stats`` hold one entry per pass, in order.
    """

    reputations: ReputationVector
    rankings: RankingVector
    partitions: tuple[GroupPartition, ...]
    stats: tuple[GroupStats, ...]

    @property
    def partition(self) -> GroupPartition:
        return self.partitions[-1]
