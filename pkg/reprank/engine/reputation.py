"""Iterative reputation-based ranking and the arithmetic-average baseline.

Each round updates every item's ranking as the reputation-weighted
average of its ratings, then every user's reputation as one minus
``lambda`` times the user's mean absolute discordance with the new
rankings. Only the raters of an item take part in its average.

All sums go through ``numpy.bincount`` over the row-major entry arrays,
so results are bit-identical between runs.
"""

from __future__ import annotations

import logging

import numpy as np

from reprank.base import (
    ContractViolationError,
    InputError,
    RankingVector,
    RatingsMatrix,
    ReputationVector,
)
from reprank.engine.models import EngineConfig, EngineResult

logger = logging.getLogger(__name__)


def _weighted_rankings(R: RatingsMatrix, weights: np.ndarray) -> np.ndarray:
    """Weighted column means; NaN for unrated items."""
    rows, cols, data = R.coo
    w = weights[rows]
    numerator = np.bincount(cols, weights=data * w, minlength=R.n_items)
    denominator = np.bincount(cols, weights=w, minlength=R.n_items)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(denominator > 0, numerator / denominator, np.nan)


def _discordance_reputations(R: RatingsMatrix, rankings: np.ndarray, lambda_: float) -> np.ndarray:
    rows, cols, data = R.coo
    discordance = np.bincount(rows, weights=np.abs(data - rankings[cols]), minlength=R.n_users)
    return 1.0 - lambda_ * discordance / R.user_counts


def _to_ranking_vector(R: RatingsMatrix, values: np.ndarray) -> RankingVector:
    rated = R.item_counts > 0
    return RankingVector(
        ids=tuple(item for item, keep in zip(R.item_ids, rated, strict=True) if keep),
        values=values[rated],
        unrated=frozenset(item for item, keep in zip(R.item_ids, rated, strict=True) if not keep),
    )


def _reputation_array(R: RatingsMatrix, c: ReputationVector) -> np.ndarray:
    weights = np.zeros(R.n_users, dtype=np.float64)
    active = R.user_counts > 0
    for row, user_id in enumerate(R.user_ids):
        if not active[row]:
            continue
        value = c.get(user_id)
        if value is None:
            raise ContractViolationError(f"No reputation for rating user {user_id}")
        weights[row] = value
    if np.any(weights[active] <= 0):
        raise ContractViolationError("Every reputation must be strictly positive")
    return weights


def _check_lambda(lambda_: float) -> None:
    if not 0 < lambda_ < 1:
        raise InputError(f"lambda must lie in ]0,1[, got {lambda_}")


def update_rankings(R: RatingsMatrix, c: ReputationVector) -> RankingVector:
    """Rank every rated item by the reputation-weighted mean of its ratings.

    Raises:
        ContractViolationError: If a rating user has no reputation or a
            nonpositive one.
    """
    weights = _reputation_array(R, c)
    return _to_ranking_vector(R, _weighted_rankings(R, weights))


def update_reputations(R: RatingsMatrix, r: RankingVector, lambda_: float) -> ReputationVector:
    """Score every user by ``1 - lambda * mean |R_ui - r_i|`` over the user's items.

    Raises:
        ContractViolationError: If ``R`` holds a user without ratings or a
            rated item has no ranking.
        InputError: If ``lambda_`` is outside ]0,1[.
    """
    _check_lambda(lambda_)
    if np.any(R.user_counts == 0):
        raise ContractViolationError(
            "Users without ratings must be excluded before updating reputations"
        )
    rankings = np.full(R.n_items, np.nan)
    for col, item_id in enumerate(R.item_ids):
        value = r.get(item_id)
        if value is not None:
            rankings[col] = value
    missing = (R.item_counts > 0) & np.isnan(rankings)
    if np.any(missing):
        first = R.item_ids[int(np.flatnonzero(missing)[0])]
        raise ContractViolationError(f"Rated item {first} has no ranking")
    return ReputationVector(ids=R.user_ids, values=_discordance_reputations(R, rankings, lambda_))


def compute(R: RatingsMatrix, cfg: EngineConfig | None = None) -> EngineResult:
    """Alternate ranking and reputation updates until convergence.

    Starts from ``cfg.initial_reputation`` for everyone and stops once the
    largest per-user reputation change drops below ``cfg.convergence_tol``
    or after ``cfg.max_iterations`` rounds (exactly that many with
    ``cfg.exact_iterations``). Users without ratings are left out and
    listed in ``excluded_users``.

    Raises:
        InputError: If the matrix holds no ratings.
    """
    cfg = cfg or EngineConfig()
    if R.n_entries == 0:
        raise InputError("Cannot compute reputations on an empty ratings matrix")

    active = R.without_inactive_users()
    excluded = tuple(R.inactive_users()) if active is not R else ()
    if excluded:
        logger.info("Excluding %d users without ratings from the engine", len(excluded))

    reputations = np.full(active.n_users, cfg.initial_reputation, dtype=np.float64)
    rankings = np.full(active.n_items, np.nan)
    deltas: list[float] = []
    for iteration in range(1, cfg.max_iterations + 1):
        rankings = _weighted_rankings(active, reputations)
        updated = _discordance_reputations(active, rankings, cfg.lambda_)
        delta = float(np.max(np.abs(updated - reputations)))
        deltas.append(delta)
        reputations = updated
        logger.debug("Iteration %d: max reputation change %.3e", iteration, delta)
        if not cfg.exact_iterations and delta < cfg.convergence_tol:
            break

    logger.info(
        "Engine finished after %d iterations (last change %.3e, lambda=%s)",
        len(deltas),
        deltas[-1],
        cfg.lambda_,
    )
    return EngineResult(
        reputations=ReputationVector(ids=active.user_ids, values=reputations),
        rankings=_to_ranking_vector(active, rankings),
        iterations=len(deltas),
        deltas=tuple(deltas),
        excluded_users=excluded,
    )


def arithmetic_average(R: RatingsMatrix) -> RankingVector:
    """Rank every rated item by the plain mean of its ratings."""
    return _to_ranking_vector(R, _weighted_rankings(R, np.ones(R.n_users, dtype=np.float64)))
