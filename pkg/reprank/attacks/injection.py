"""Synthetic rating attacks and the robustness of a ranking method against them.

Every attacker draws from its own numpy substream, spawned from
``SeedSequence([rng_seed, kind index])``, so an attacked dataset depends
only on the AttackSpec and never on how many attacks ran before it.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from reprank.attacks.models import AttackKind, AttackResult, AttackSpec
from reprank.base import Dataset, InputError, RatingEntry, RatingsMatrix, UserProfiles
from reprank.engine import EngineConfig
from reprank.metrics import kendall_tau
from reprank.pipeline import MethodSpec, run_method

logger = logging.getLogger(__name__)

_KIND_STREAM = {kind: i for i, kind in enumerate(AttackKind)}

# Guards floor(p * n) against p * n landing just below an integer
_FLOOR_EPS = 1e-9


def most_rated_item(R: RatingsMatrix) -> str:
    """Item with the most raters; ties go to the smallest item id.

    Raises:
        InputError: If nothing is rated.
    """
    counts = R.item_counts
    if counts.size == 0 or counts.max() == 0:
        raise InputError("No rated item to target")
    top = int(counts.max())
    return min(item for item, n in zip(R.item_ids, counts, strict=True) if n == top)


def attack_size(R: RatingsMatrix, spec: AttackSpec, target: str | None) -> int:
    """Ratings (random spam) or attackers (targeted kinds) to inject."""
    if spec.kind == AttackKind.RANDOM_SPAM:
        baseline = R.n_entries
    else:
        baseline = int(R.item_counts[R.item_index[target]])  # type: ignore[index]
    return math.floor(spec.proportion * baseline + _FLOOR_EPS)


def _rating_grid(R: RatingsMatrix) -> np.ndarray:
    steps = max(round(R.max_raw_rating), 1)
    return np.arange(1, steps + 1, dtype=np.float64) / steps


def _attacker_ids(R: RatingsMatrix, n: int) -> list[str]:
    taken = set(R.user_ids)
    ids: list[str] = []
    k = 0
    while len(ids) < n:
        candidate = f"attacker-{k}"
        if candidate not in taken:
            ids.append(candidate)
        k += 1
    return ids


def _draw_classes(
    dataset: Dataset, rng: np.random.Generator, spec: AttackSpec
) -> dict[str, str | None]:
    if not spec.attackers_in_partitions:
        return {a.name: None for a in dataset.schema.attributes}
    return {
        a.name: a.classes[int(rng.integers(len(a.classes)))] for a in dataset.schema.attributes
    }


def inject(dataset: Dataset, spec: AttackSpec) -> AttackResult:
    """Append synthetic attackers to ``dataset``.

    Targeted kinds add ``floor(proportion * raters of target)`` users, each
    rating the target with one extreme and ``side_set_size`` distinct random
    other items with the opposite extreme. Random spam adds
    ``floor(proportion * ratings)`` ratings of random whole-star values,
    ``side_set_size`` per attacker (the last one takes the remainder).
    Attackers get uniformly drawn attribute classes. Existing ratings are
    never touched.

    Raises:
        InputError: If the target is unknown or ``side_set_size`` exceeds
            ``n_items - 1``.
    """
    R = dataset.ratings
    if spec.side_set_size > R.n_items - 1:
        raise InputError(
            f"Side set of {spec.side_set_size} items exceeds n_items - 1 = {R.n_items - 1}"
        )
    target = None
    if spec.kind != AttackKind.RANDOM_SPAM:
        target = spec.target_item if spec.target_item is not None else most_rated_item(R)
        if target not in R.item_index:
            raise InputError(f"Attack target {target!r} is not in the ratings matrix")

    size = attack_size(R, spec, target)
    if size == 0:
        logger.debug("Attack %s at %.3f injects nothing", spec.kind.value, spec.proportion)
        return AttackResult(dataset=dataset, attacker_ids=frozenset(), target_item=target)

    if spec.kind == AttackKind.RANDOM_SPAM:
        n_attackers = math.ceil(size / spec.side_set_size)
    else:
        n_attackers = size
    seeds = np.random.SeedSequence([spec.rng_seed, _KIND_STREAM[spec.kind]]).spawn(n_attackers)
    attacker_ids = _attacker_ids(R, n_attackers)

    low = 1.0 / max(round(R.max_raw_rating), 1)
    grid = _rating_grid(R)
    items = np.asarray(R.item_ids, dtype=object)
    others = items if target is None else items[items != target]

    entries: list[RatingEntry] = []
    assignment: dict[str, dict[str, str | None]] = {}
    for k, (user_id, seed) in enumerate(zip(attacker_ids, seeds, strict=True)):
        rng = np.random.default_rng(seed)
        if spec.kind == AttackKind.RANDOM_SPAM:
            count = min(spec.side_set_size, size - k * spec.side_set_size)
            picked = rng.choice(others.size, size=count, replace=False)
            values = rng.choice(grid, size=count)
            entries.extend(
                (user_id, str(others[j]), float(v)) for j, v in zip(picked, values, strict=True)
            )
        else:
            love = spec.kind == AttackKind.LOVE_HATE
            entries.append((user_id, str(target), 1.0 if love else low))
            picked = rng.choice(others.size, size=spec.side_set_size, replace=False)
            side_value = low if love else 1.0
            entries.extend((user_id, str(others[j]), side_value) for j in picked)
        assignment[user_id] = _draw_classes(dataset, rng, spec)

    attacked = Dataset(
        name=dataset.name,
        ratings=R.with_new_users(entries),
        schema=dataset.schema,
        profiles=dataset.profiles.merged(UserProfiles(assignment=assignment)),
    )
    logger.debug(
        "Injected %d %s attackers (%d ratings) at proportion %.3f",
        n_attackers,
        spec.kind.value,
        len(entries),
        spec.proportion,
    )
    return AttackResult(dataset=attacked, attacker_ids=frozenset(attacker_ids), target_item=target)


def robustness(
    clean: Dataset,
    attacked: Dataset,
    cfg: EngineConfig | None = None,
    method: MethodSpec | None = None,
) -> float:
    """Kendall tau between the method's rankings on the clean and attacked data.

    Only items of the clean dataset take part. Identical matrices score 1.
    """
    if attacked.ratings is clean.ratings:
        return 1.0
    clean_rankings = run_method(clean, cfg, method).rankings
    attacked_rankings = run_method(attacked, cfg, method).rankings
    return kendall_tau(clean_rankings, attacked_rankings)
