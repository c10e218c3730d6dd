"""Robustness curves: every (kind, proportion, seed) attack against every method."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import partial

from reprank.attacks.injection import inject
from reprank.attacks.models import (
    DEFAULT_PROPORTIONS,
    AttackKind,
    AttackSpec,
    SweepResult,
    SweepRow,
)
from reprank.base import Dataset, ExecutorType, InputError, RankingVector, run_ordered
from reprank.engine import EngineConfig
from reprank.metrics import kendall_tau
from reprank.pipeline import MethodSpec, run_method

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _SweepContext:
    dataset: Dataset
    cfg: EngineConfig
    methods: tuple[MethodSpec, ...]
    clean: tuple[RankingVector, ...]


@dataclass(frozen=True)
class _Cell:
    spec: AttackSpec


def _run_cell(context: _SweepContext, cell: _Cell) -> tuple[list[float], int]:
    """Taus of every method for one attack, in method order."""
    attack = inject(context.dataset, cell.spec)
    if attack.n_attackers == 0:
        return [1.0] * len(context.methods), 0
    taus = [
        kendall_tau(clean, run_method(attack.dataset, context.cfg, method).rankings)
        for method, clean in zip(context.methods, context.clean, strict=True)
    ]
    return taus, attack.n_attackers


def attack_sweep(  # noqa: PLR0913
    dataset: Dataset,
    kinds: Sequence[AttackKind],
    proportions: Sequence[float] = DEFAULT_PROPORTIONS,
    methods: Sequence[MethodSpec] | None = None,
    seeds: Sequence[int] = (0,),
    cfg: EngineConfig | None = None,
    *,
    side_set_size: int = 10,
    targets: Mapping[AttackKind, str] | None = None,
    attackers_in_partitions: bool = True,
    max_workers: int = 1,
    executor: ExecutorType = ExecutorType.THREAD,
) -> SweepResult:
    """Run the cartesian attack sweep and measure each method's robustness.

    One cell injects one (kind, proportion, seed) attack and ranks the
    attacked data with every method; clean rankings are computed once.
    Cells run through :func:`reprank.base.run_ordered`, so with
    ``max_workers > 1`` they execute in parallel while rows keep a fixed
    kind, method, seed, proportion order.

    Args:
        dataset: Clean dataset.
        kinds: Attack kinds.
        proportions: Attack sizes, see :class:`AttackSpec`.
        methods: Ranking methods to compare (plain reputation by default).
        seeds: One attack per seed and cell.
        cfg: Engine configuration.
        side_set_size: Side items per attacker.
        targets: Target item per targeted kind; the most-rated item otherwise.
        attackers_in_partitions: Whether attackers join demographic groups.
        max_workers: Parallel cells; 1 runs sequentially.
        executor: Thread or process pool.

    Raises:
        InputError: If any of the grids is empty.
    """
    methods = methods if methods is not None else [MethodSpec()]
    if not kinds or not proportions or not methods or not seeds:
        raise InputError("kinds, proportions, methods and seeds must all be non-empty")
    cfg = cfg or EngineConfig()
    targets = targets or {}

    clean = tuple(run_method(dataset, cfg, method).rankings for method in methods)
    context = _SweepContext(dataset=dataset, cfg=cfg, methods=tuple(methods), clean=clean)
    cells = [
        _Cell(
            AttackSpec(
                kind=kind,
                target_item=targets.get(kind),
                proportion=proportion,
                side_set_size=side_set_size,
                rng_seed=seed,
                attackers_in_partitions=attackers_in_partitions,
            )
        )
        for kind, seed, proportion in itertools.product(kinds, seeds, proportions)
    ]
    logger.info(
        "Running %d attack cells x %d methods with %d workers",
        len(cells),
        len(methods),
        max_workers,
    )
    outcomes = dict(
        zip(
            ((c.spec.kind, c.spec.rng_seed, c.spec.proportion) for c in cells),
            run_ordered(partial(_run_cell, context), cells, max_workers, executor),
            strict=True,
        )
    )

    result = SweepResult()
    for kind in kinds:
        for seed, proportion in itertools.product(seeds, proportions):
            outcome = outcomes[(kind, seed, proportion)]
            if not outcome.success:
                result.failed_cells.append((kind, proportion, seed))
                result.errors.append(f"{kind.value}@{proportion}/seed={seed}: {outcome.error}")
                logger.warning(
                    "Attack cell %s@%s seed %d failed: %s",
                    kind.value,
                    proportion,
                    seed,
                    outcome.error,
                )
        for m, method in enumerate(methods):
            for seed, proportion in itertools.product(seeds, proportions):
                outcome = outcomes[(kind, seed, proportion)]
                if not outcome.success or outcome.value is None:
                    continue
                taus, n_attackers = outcome.value
                result.rows.append(
                    SweepRow(
                        kind=kind,
                        proportion=proportion,
                        method=method.label,
                        seed=seed,
                        tau=taus[m],
                        n_attackers=n_attackers,
                    )
                )
    return result
