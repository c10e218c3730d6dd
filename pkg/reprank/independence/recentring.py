"""Reputation independence by per-group recentring.

Every group of a partition is moved by a positive affine map so that its
reputation mean and standard deviation match common targets. Partitioning
on one attribute gives single-attribute independence; partitioning on the
k-tuple of all attributes gives multi-attribute independence, which also
equalizes the mean of every marginal class.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from reprank.base import (
    AttributeSchema,
    GroupPartition,
    InputError,
    RangeViolationError,
    RatingsMatrix,
    ReputationVector,
    UserProfiles,
    build_partition,
)
from reprank.engine import update_rankings
from reprank.independence.models import (
    GroupStats,
    GroupSummary,
    MitigationResult,
    RecenteringOptions,
    TargetMode,
)

logger = logging.getLogger(__name__)

# Round-off allowance above 1 before a value counts as out of range
_RANGE_EPS = 1e-12


def group_stats(
    c: ReputationVector,
    partition: GroupPartition,
    options: RecenteringOptions | None = None,
) -> GroupStats:
    """Mean, standard deviation and size of every group, plus the targets.

    Only members that have a reputation in ``c`` count. Groups left empty
    that way are skipped. A group with a single member reports std 0 and is
    flagged degenerate. Groups with zero spread never set the std target.

    Raises:
        InputError: If no group has a member in ``c``.
    """
    options = options or RecenteringOptions()
    groups: dict[tuple[str, ...], GroupSummary] = {}
    pooled: list[np.ndarray] = []
    for key, members in partition.groups.items():
        values = c.group_values(members)
        if values.size == 0:
            logger.debug("Group %s has no reputations, skipped", partition.label(key))
            continue
        degenerate = values.size == 1
        std = 0.0 if degenerate else float(np.std(values, ddof=options.ddof))
        groups[key] = GroupSummary(
            mean=float(np.mean(values)), std=std, size=int(values.size), degenerate=degenerate
        )
        pooled.append(values)

    if not groups:
        raise InputError("Partition has no group with reputations")

    if options.target == TargetMode.MIN:
        target_mean = min(s.mean for s in groups.values())
        spreads = [s.std for s in groups.values() if s.std > 0]
        target_std = min(spreads) if spreads else 0.0
    else:
        everyone = np.concatenate(pooled)
        target_mean = float(np.mean(everyone))
        target_std = float(np.std(everyone, ddof=options.ddof)) if everyone.size > 1 else 0.0

    return GroupStats(
        groups=groups, target_mean=target_mean, target_std=target_std, options=options
    )


def _check_range(values: np.ndarray, options: RecenteringOptions) -> np.ndarray:
    bad = (values <= 0) | (values > 1 + _RANGE_EPS)
    if np.any(bad):
        message = (
            f"{int(bad.sum())} recentred reputations left ]0,1] "
            f"(min {values.min():.6g}, max {values.max():.6g})"
        )
        if options.target == TargetMode.MIN:
            raise RangeViolationError(message)
        logger.warning("%s with %s targets", message, options.target.value)
        return values
    return np.minimum(values, 1.0)


def recenter(
    c: ReputationVector,
    partition: GroupPartition,
    options: RecenteringOptions | None = None,
    stats: GroupStats | None = None,
) -> ReputationVector:
    """Map every group to the common reputation mean and standard deviation.

    ``c'_u = target_mean + (c_u - mean_l) * target_std / std_l`` for every
    user ``u`` of group ``l``. Groups with zero spread, single-member groups
    included, collapse to ``target_mean``. Users outside every group keep
    their reputation.

    Raises:
        RangeViolationError: If a recentred reputation leaves ]0,1] with
            minimum targets.
    """
    options = options or RecenteringOptions()
    stats = stats or group_stats(c, partition, options)
    values = c.values.copy()
    for key, summary in stats.groups.items():
        rows = np.fromiter(
            (c.index_of(u) for u in partition.groups[key] if u in c), dtype=np.int64
        )
        if summary.std == 0.0:
            if not summary.degenerate:
                logger.warning(
                    "Group %s has identical reputations, mapped to the target mean",
                    partition.label(key),
                )
            values[rows] = stats.target_mean
            continue
        values[rows] = stats.target_mean + (values[rows] - summary.mean) * (
            stats.target_std / summary.std
        )

    values = _check_range(values, options)
    return ReputationVector(ids=c.ids, values=values)


def _mitigate(
    R: RatingsMatrix,
    c: ReputationVector,
    partition: GroupPartition,
    options: RecenteringOptions | None,
) -> tuple[ReputationVector, GroupStats]:
    stats = group_stats(c, partition, options)
    logger.debug(
        "Recentring %d groups on %s to mean %.6f, std %.6f",
        len(stats.groups),
        "/".join(partition.key_attributes),
        stats.target_mean,
        stats.target_std,
    )
    return recenter(c, partition, options, stats), stats


def multi_fair(  # noqa: PLR0913
    R: RatingsMatrix,
    c: ReputationVector,
    schema: AttributeSchema,
    profiles: UserProfiles,
    attrs: Sequence[str],
    min_group_size: int = 1,
    options: RecenteringOptions | None = None,
) -> MitigationResult:
    """Recentre on the meta-partition of ``attrs`` and recompute rankings.

    Every marginal class of every attribute in ``attrs`` ends up with the
    same mean reputation.

    Raises:
        InputError: If ``attrs`` is empty.
        SchemaError: If an attribute is unknown.
    """
    partition = build_partition(schema, profiles, attrs, min_group_size)
    reputations, stats = _mitigate(R, c, partition, options)
    return MitigationResult(
        reputations=reputations,
        rankings=update_rankings(R, reputations),
        partitions=(partition,),
        stats=(stats,),
    )


def single_fair(  # noqa: PLR0913
    R: RatingsMatrix,
    c: ReputationVector,
    schema: AttributeSchema,
    profiles: UserProfiles,
    attr: str,
    min_group_size: int = 1,
    options: RecenteringOptions | None = None,
) -> MitigationResult:
    """Recentre on the classes of one attribute and recompute rankings."""
    return multi_fair(R, c, schema, profiles, [attr], min_group_size, options)


def sequential_fair(  # noqa: PLR0913
    R: RatingsMatrix,
    c: ReputationVector,
    schema: AttributeSchema,
    profiles: UserProfiles,
    attrs: Sequence[str],
    min_group_size: int = 1,
    options: RecenteringOptions | None = None,
) -> MitigationResult:
    """Apply :func:`single_fair` attribute by attribute.

    Each pass starts from the previous pass's reputations. Later passes
    generally undo the balance reached by earlier ones when attributes are
    correlated, so some marginal disparity remains.
    """
    if not attrs:
        raise InputError("At least one attribute is required")
    partitions: list[GroupPartition] = []
    all_stats: list[GroupStats] = []
    reputations = c
    for attr in attrs:
        partition = build_partition(schema, profiles, [attr], min_group_size)
        reputations, stats = _mitigate(R, reputations, partition, options)
        partitions.append(partition)
        all_stats.append(stats)
    return MitigationResult(
        reputations=reputations,
        rankings=update_rankings(R, reputations),
        partitions=tuple(partitions),
        stats=tuple(all_stats),
    )
