from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from reprank.base import Dataset


class AttackKind(StrEnum):
    """Rating attack models."""

    # Random whole-star ratings to random items
    RANDOM_SPAM = "random_spam"
    # Highest rating to the target, lowest to a random side set
    LOVE_HATE = "love_hate"
    # Lowest rating to the target, highest to a random side set
    HATE_LOVE = "hate_love"


# Sweep grid used when none is given
DEFAULT_PROPORTIONS: tuple[float, ...] = (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45)


class AttackSpec(BaseModel):
    """One attack: kind, target, size and seed.

    ``proportion`` is relative to all existing ratings for random spam, and
    to the raters of the target item otherwise. Without ``target_item`` the
    targeted attacks hit the most-rated item.
    """

    model_config = ConfigDict(frozen=True)

    kind: AttackKind
    target_item: str | None = None
    proportion: float = Field(gt=0, lt=1)
    side_set_size: int = Field(10, ge=1)
    rng_seed: int = 0
    # When False, attackers get missing attributes and stay out of partitions
    attackers_in_partitions: bool = True


@dataclass(frozen=True)
class AttackResult:
    """Attacked dataset and the injected users."""

    dataset: Dataset
    attacker_ids: frozenset[str]
    target_item: str | None = None

    @property
    def n_attackers(self) -> int:
        return len(self.attacker_ids)


@dataclass(frozen=True)
class SweepRow:
    kind: AttackKind
    proportion: float
    method: str
    seed: int
    tau: float
    n_attackers: int


@dataclass
class SweepResult:
    """Robustness curve rows of an attack sweep.

    Rows are ordered by kind, method, seed and proportion. Cells that
    raised are missing from ``rows`` and listed in ``failed_cells``.
    """

    rows: list[SweepRow] = field(default_factory=list)
    failed_cells: list[tuple[AttackKind, float, int]] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return not self.failed_cells
