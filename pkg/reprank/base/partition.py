"""Demographic partitions of users by one or more sensitive attributes."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence

from reprank.base.errors import InputError
from reprank.base.models import AttributeSchema, GroupPartition, UserProfiles

logger = logging.getLogger(__name__)


def build_partition(
    schema: AttributeSchema,
    profiles: UserProfiles,
    attrs: Sequence[str],
    min_group_size: int = 1,
) -> GroupPartition:
    """Group users by the tuple of their classes on ``attrs``.

    Keys follow the cartesian product of the declared class orders, so the
    group map is deterministic. Users missing any of the attributes, and
    groups smaller than ``min_group_size``, are left out; empty tuples are
    absent.

    Args:
        schema: Declared attributes and classes.
        profiles: Class assignment of every user.
        attrs: Attribute names keying the groups (k-tuples for k > 1).
        min_group_size: Smallest group kept.

    Returns:
        GroupPartition with disjoint groups.

    Raises:
        SchemaError: If an attribute is not in the schema.
        InputError: If ``attrs`` is empty or ``min_group_size`` < 1.
    """
    if not attrs:
        raise InputError("At least one attribute is required to build a partition")
    if min_group_size < 1:
        raise InputError(f"min_group_size must be >= 1, got {min_group_size}")

    names = schema.resolve(attrs)
    class_lists = [schema.classes_of(name) for name in names]

    members: dict[tuple[str, ...], set[str]] = {
        key: set() for key in itertools.product(*class_lists)
    }
    excluded: set[str] = set()
    for user_id, classes in profiles.assignment.items():
        key = tuple(classes.get(name) for name in names)
        if any(label is None for label in key):
            excluded.add(user_id)
            continue
        if key not in members:
            # Undeclared class: treat like a missing value
            logger.debug("User %s has undeclared classes %s, excluded", user_id, key)
            excluded.add(user_id)
            continue
        members[key].add(user_id)  # type: ignore[index]

    groups: dict[tuple[str, ...], frozenset[str]] = {}
    for key, users in members.items():
        if not users:
            continue
        if len(users) < min_group_size:
            excluded.update(users)
            continue
        groups[key] = frozenset(users)

    if excluded:
        logger.debug(
            "Partition on %s: %d groups, %d users excluded", names, len(groups), len(excluded)
        )
    return GroupPartition(
        key_attributes=tuple(names),
        groups=groups,
        min_group_size=min_group_size,
        excluded=frozenset(excluded),
    )
