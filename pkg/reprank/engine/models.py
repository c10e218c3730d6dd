"""Models for the iterative reputation engine."""

from __future__ import annotations

from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field

from reprank.base import RankingVector, ReputationVector


class EngineConfig(BaseModel):
    """Parameters of the iterative reputation/ranking scheme.

    ``lambda_`` (alias ``lambda``) penalizes a user's discordance with the
    item rankings. With ``exact_iterations`` the engine runs exactly
    ``max_iterations`` rounds and ignores ``convergence_tol``.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambda_: float = Field(0.5, alias="lambda", gt=0, lt=1)
    max_iterations: int = Field(100, ge=1)
    convergence_tol: float = Field(1e-9, ge=0)
    initial_reputation: float = Field(1.0, gt=0, le=1)
    exact_iterations: bool = False

    @classmethod
    def fixed(cls, iterations: int, lambda_: float = 0.5) -> EngineConfig:
        """Config that runs exactly ``iterations`` rounds."""
        return cls(lambda_=lambda_, max_iterations=iterations, exact_iterations=True)


@dataclass(frozen=True)
class EngineResult:
    """Outcome of :func:`reprank.engine.compute`."""

    reputations: ReputationVector
    rankings: RankingVector
    iterations: int
    # max_u |c_u^{k+1} - c_u^k| for every round
    deltas: tuple[float, ...] = ()
    excluded_users: tuple[str, ...] = field(default_factory=tuple)

    @property
    def converged_delta(self) -> float:
        return self.deltas[-1] if self.deltas else 0.0
