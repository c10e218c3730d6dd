"""Experiment orchestration: ingest, engine, mitigation, metrics, quality and attacks."""

from __future__ import annotations

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from reprank.attacks import attack_sweep
from reprank.base import (
    Dataset,
    ExperimentError,
    GroupPartition,
    InputError,
    ReprankError,
    ReputationVector,
    build_partition,
)
from reprank.dataset_factory import load_dataset
from reprank.datasets import holdout_split
from reprank.engine import arithmetic_average, compute
from reprank.experiment.config import ExperimentConfig
from reprank.experiment.report import (
    DRCellRow,
    ExperimentReport,
    GroupRow,
    PartitionReport,
    QualityReport,
    RobustnessRow,
    RunMetadata,
)
from reprank.independence import GroupStats, group_stats
from reprank.metrics import dr_matrix, group_box_summaries, kendall_tau, marginal_disparity, rmse
from reprank.pipeline import apply_mitigation, run_method

logger = logging.getLogger(__name__)


def _package_version() -> str:
    try:
        return version("reprank")
    except PackageNotFoundError:
        return "0.0.0"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@contextmanager
def _stage(name: str) -> Iterator[None]:
    """Re-raise library errors as ExperimentError tagged with the stage name."""
    try:
        yield
    except ExperimentError:
        raise
    except (ReprankError, ImportError, OSError) as e:
        raise ExperimentError(name, e) from e


def _load(config: ExperimentConfig) -> Dataset:
    return load_dataset(
        config.dataset,
        ratings=config.ratings,
        users=config.users,
        continent_table=config.continent_table,
        max_rating=config.max_rating,
    )


def _partition_report(
    stage: str,
    c: ReputationVector,
    partition: GroupPartition,
    config: ExperimentConfig,
    stats: GroupStats | None = None,
) -> PartitionReport:
    if not any(c.group_values(members).size for members in partition.groups.values()):
        return PartitionReport(
            stage=stage,
            attributes=list(partition.key_attributes),
            excluded_users=len(partition.excluded),
        )
    summaries = group_box_summaries(c, partition)
    stats = stats or group_stats(c, partition, config.recentring_options())
    groups = [
        GroupRow(
            label=partition.label(key),
            size=summary.size,
            mean=summary.mean,
            std=summary.std,
            min=summaries[partition.label(key)].min,
            q1=summaries[partition.label(key)].q1,
            median=summaries[partition.label(key)].median,
            q3=summaries[partition.label(key)].q3,
            max=summaries[partition.label(key)].max,
        )
        for key, summary in stats.groups.items()
    ]
    cells: list[DRCellRow] = []
    if len(stats.groups) >= 2:  # noqa: PLR2004
        matrix = dr_matrix(c, partition, config.alpha, equal_var=config.pooled_variance)
        for (a, b), cell in matrix.cells.items():
            cells.append(
                DRCellRow(
                    a=a,
                    b=b,
                    delta=cell.delta,
                    statistic=None if cell.test is None else cell.test.statistic,
                    degrees_of_freedom=None if cell.test is None else cell.test.degrees_of_freedom,
                    p_value=cell.p_value,
                    reject=cell.reject,
                )
            )
    return PartitionReport(
        stage=stage,
        attributes=list(partition.key_attributes),
        target_mean=stats.target_mean,
        target_std=stats.target_std,
        excluded_users=len(partition.excluded),
        groups=groups,
        cells=cells,
    )


def _report_partitions(
    dataset: Dataset, attrs: list[str], config: ExperimentConfig
) -> list[GroupPartition]:
    """One partition per attribute, plus the joint one for several attributes."""
    keys = [[a] for a in attrs]
    if len(attrs) > 1:
        keys.append(attrs)
    return [
        build_partition(dataset.schema, dataset.profiles, key, config.min_group_size)
        for key in keys
    ]


def quality_eval(config: ExperimentConfig, dataset: Dataset | None = None) -> QualityReport:
    """Hold out ``config.split`` of the ratings and score the configured method.

    Kendall tau compares the method's training-side rankings with AA on the
    same training ratings. Each test rating ``(u, i)`` is predicted by the
    training ranking of ``i``; ratings of items unranked in training are
    excluded and counted.

    Raises:
        InputError: If no split fraction is configured or no test rating
            can be predicted.
    """
    if config.split is None:
        raise InputError("Quality evaluation needs a split fraction")
    dataset = dataset or _load(config)
    train, test = holdout_split(
        dataset.ratings, config.split, config.seed, per_user=config.per_user_split
    )
    train_dataset = Dataset(
        name=dataset.name, ratings=train, schema=dataset.schema, profiles=dataset.profiles
    )
    rankings = run_method(train_dataset, config.engine_config(), config.method()).rankings
    tau = kendall_tau(rankings, arithmetic_average(train))

    _, cols, observed = test.coo
    predicted = np.array([rankings.get(test.item_ids[j], np.nan) for j in cols], dtype=np.float64)
    known = ~np.isnan(predicted)
    excluded = int((~known).sum())
    if not known.any():
        raise InputError("No test rating falls on an item ranked in training")
    if excluded:
        logger.info("Excluded %d test ratings of items unranked in training", excluded)
    error = rmse(predicted[known], observed[known])
    return QualityReport(
        test_fraction=config.split,
        per_user=config.per_user_split,
        tau_vs_aa=tau,
        rmse=error,
        rmse_raw=error * dataset.ratings.max_raw_rating,
        test_ratings=int(test.n_entries),
        excluded_test_ratings=excluded,
    )


def run(config: ExperimentConfig) -> ExperimentReport:
    """Run one experiment end to end.

    Raises:
        ExperimentError: Wrapping the first failure with its stage name
            (ingest, engine, mitigation, metrics, quality, attack).
    """
    started_at = _now() if config.timestamps else None

    with _stage("ingest"):
        dataset = _load(config)
        mitigation = config.mitigation_spec()
        attrs = dataset.schema.resolve(config.attributes or dataset.schema.names)
        dataset.schema.resolve(mitigation.attributes)
        dataset.profiles.validate_against(dataset.schema)

    with _stage("engine"):
        engine = compute(dataset.ratings, config.engine_config())
        aa = arithmetic_average(dataset.ratings)

    with _stage("mitigation"):
        mitigated = apply_mitigation(dataset, engine.reputations, mitigation)
    reputations = engine.reputations if mitigated is None else mitigated.reputations
    rankings = engine.rankings if mitigated is None else mitigated.rankings

    with _stage("metrics"):
        stages = {"engine": engine.reputations}
        if mitigated is not None:
            stages["mitigated"] = reputations
        groupings = _report_partitions(dataset, attrs, config)
        partitions = [
            _partition_report(stage, c, partition, config)
            for stage, c in stages.items()
            for partition in groupings
        ]
        disparity = {
            stage: marginal_disparity(c, dataset.schema, dataset.profiles, attrs)
            for stage, c in stages.items()
        }
        tau_vs_aa = kendall_tau(rankings, aa)

    quality = None
    if config.split is not None:
        with _stage("quality"):
            quality = quality_eval(config, dataset)

    robustness: list[RobustnessRow] = []
    robustness_errors: list[str] = []
    if config.attack:
        with _stage("attack"):
            targets = {kind: config.attack_target for kind in config.attack if config.attack_target}
            sweep = attack_sweep(
                dataset,
                config.attack,
                config.proportions(),
                config.sweep_methods(),
                config.seeds(),
                config.engine_config(),
                side_set_size=config.side_set_size,
                targets=targets,
                attackers_in_partitions=config.attackers_in_partitions,
                max_workers=config.max_workers,
                executor=config.executor,
            )
        robustness = [
            RobustnessRow(
                kind=row.kind.value,
                proportion=row.proportion,
                method=row.method,
                seed=row.seed,
                tau=row.tau,
                n_attackers=row.n_attackers,
            )
            for row in sweep.rows
        ]
        robustness_errors = list(sweep.errors)

    metadata = RunMetadata(
        version=_package_version(),
        dataset=dataset.name,
        n_users=dataset.ratings.n_users,
        n_items=dataset.ratings.n_items,
        n_ratings=dataset.ratings.n_entries,
        method=config.method().label,
        recentring_variant=mitigation.options.variant,
        location_test="pooled" if config.pooled_variance else "welch",
        iterations=engine.iterations,
        final_delta=engine.converged_delta,
        users_without_ratings=len(engine.excluded_users),
        config=config.echo(),
        started_at=started_at,
        finished_at=_now() if config.timestamps else None,
    )
    logger.info(
        "Run finished: %s on %s, %d iterations", metadata.method, dataset.name, engine.iterations
    )
    return ExperimentReport(
        metadata=metadata,
        reputations=reputations.as_dict(),
        rankings=rankings.as_dict(),
        tau_vs_aa=tau_vs_aa,
        marginal_disparity=disparity,
        partitions=partitions,
        quality=quality,
        robustness=robustness,
        robustness_errors=robustness_errors,
    )
