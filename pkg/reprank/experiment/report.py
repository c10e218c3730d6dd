"""Experiment report model and its JSON / CSV-bundle writers."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from reprank.base import InputError
from reprank.experiment.config import OutputFormat

logger = logging.getLogger(__name__)


class GroupRow(BaseModel):
    """Reputation distribution of one demographic group."""

    label: str
    size: int
    mean: float
    std: float
    min: float
    q1: float
    median: float
    q3: float
    max: float


class DRCellRow(BaseModel):
    """One upper-triangle cell of a DR matrix; test fields are None for single-member groups."""

    a: str
    b: str
    delta: float
    statistic: float | None = None
    degrees_of_freedom: float | None = None
    p_value: float | None = None
    reject: bool = False


class PartitionReport(BaseModel):
    """Group statistics and DR matrix of one partition at one stage."""

    stage: str
    attributes: list[str]
    target_mean: float | None = None
    target_std: float | None = None
    excluded_users: int = 0
    groups: list[GroupRow] = Field(default_factory=list)
    cells: list[DRCellRow] = Field(default_factory=list)


class QualityReport(BaseModel):
    """Ranking quality on a held-out split.

    ``rmse`` is on the normalized ]0,1] scale, ``rmse_raw`` on the dataset's
    rating scale. Test ratings of items unranked on the training side are
    counted in ``excluded_test_ratings`` and left out of both.
    """

    test_fraction: float
    per_user: bool
    tau_vs_aa: float
    rmse: float
    rmse_raw: float
    test_ratings: int
    excluded_test_ratings: int


class RobustnessRow(BaseModel):
    kind: str
    proportion: float
    method: str
    seed: int
    tau: float
    n_attackers: int


class RunMetadata(BaseModel):
    version: str
    dataset: str
    n_users: int
    n_items: int
    n_ratings: int
    method: str
    recentring_variant: str
    location_test: str
    iterations: int
    final_delta: float
    users_without_ratings: int
    config: dict[str, Any]
    started_at: str | None = None
    finished_at: str | None = None


class ExperimentReport(BaseModel):
    """Everything one run produces."""

    model_config = ConfigDict(frozen=True)

    metadata: RunMetadata
    reputations: dict[str, float]
    rankings: dict[str, float]
    tau_vs_aa: float
    marginal_disparity: dict[str, dict[str, float]] = Field(default_factory=dict)
    partitions: list[PartitionReport] = Field(default_factory=list)
    quality: QualityReport | None = None
    robustness: list[RobustnessRow] = Field(default_factory=list)
    robustness_errors: list[str] = Field(default_factory=list)


def render_json(report: ExperimentReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def _write_frame(rows: list[dict[str, Any]], columns: list[str], path: Path) -> None:
    import pandas as pd

    pd.DataFrame(rows, columns=columns).to_csv(path, index=False, lineterminator="\n")


def _csv_bundle(report: ExperimentReport, out: Path) -> list[Path]:
    try:
        import pandas  # noqa: F401
    except ImportError as e:
        raise ImportError(
            "CSV reports need pandas. Install it with: pip install reprank[datasets]"
        ) from e
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def table(name: str, rows: list[dict[str, Any]], columns: list[str]) -> None:
        path = out / f"{name}.csv"
        _write_frame(rows, columns, path)
        written.append(path)

    metadata = out / "metadata.json"
    metadata.write_text(report.metadata.model_dump_json(indent=2) + "\n", encoding="utf-8")
    written.append(metadata)

    table(
        "reputations",
        [{"user": u, "reputation": v} for u, v in report.reputations.items()],
        ["user", "reputation"],
    )
    table(
        "rankings",
        [{"item": i, "ranking": v} for i, v in report.rankings.items()],
        ["item", "ranking"],
    )
    group_columns = ["stage", "attributes", *GroupRow.model_fields]
    table(
        "group_stats",
        [
            {"stage": p.stage, "attributes": "/".join(p.attributes), **g.model_dump()}
            for p in report.partitions
            for g in p.groups
        ],
        group_columns,
    )
    table(
        "dr_matrix",
        [
            {"stage": p.stage, "attributes": "/".join(p.attributes), **c.model_dump()}
            for p in report.partitions
            for c in p.cells
        ],
        ["stage", "attributes", *DRCellRow.model_fields],
    )
    table(
        "quality",
        [report.quality.model_dump()] if report.quality else [],
        list(QualityReport.model_fields),
    )
    table(
        "robustness_curve",
        [row.model_dump() for row in report.robustness],
        list(RobustnessRow.model_fields),
    )
    return written


def emit_report(
    report: ExperimentReport, out: Path | str, output_format: OutputFormat = OutputFormat.JSON
) -> list[Path]:
    """Write ``report`` as one JSON file or as a directory of CSV tables.

    Output depends only on the report, so equal reports give identical bytes.

    Returns:
        Paths of the written files.

    Raises:
        InputError: On an unknown format.
        OSError: If the output cannot be written.
    """
    out = Path(out)
    if output_format == OutputFormat.JSON:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(render_json(report), encoding="utf-8")
        written = [out]
    elif output_format == OutputFormat.CSV:
        written = _csv_bundle(report, out)
    else:
        raise InputError(f"Unknown report format: {output_format}")
    logger.info("Wrote %d report files to %s", len(written), out)
    return written
