"""Rating attack injection and robustness sweeps."""

from reprank.attacks.injection import attack_size, inject, most_rated_item, robustness
from reprank.attacks.models import (
    DEFAULT_PROPORTIONS,
    AttackKind,
    AttackResult,
    AttackSpec,
    SweepResult,
    SweepRow,
)
from reprank.attacks.sweep import attack_sweep

__all__ = [
    # Models
    "DEFAULT_PROPORTIONS",
    "AttackKind",
    "AttackResult",
    "AttackSpec",
    "SweepResult",
    "SweepRow",
    # Operations
    "attack_size",
    "inject",
    "most_rated_item",
    "robustness",
    "attack_sweep",
]
