"""Experiment runs: configuration, orchestration and reports."""

from reprank.experiment.config import (
    ExperimentConfig,
    OutputFormat,
    build_config,
    read_config_file,
)
from reprank.experiment.report import (
    DRCellRow,
    ExperimentReport,
    GroupRow,
    PartitionReport,
    QualityReport,
    RobustnessRow,
    RunMetadata,
    emit_report,
    render_json,
)
from reprank.experiment.runner import quality_eval, run

__all__ = [
    # Configuration
    "ExperimentConfig",
    "OutputFormat",
    "build_config",
    "read_config_file",
    # Report
    "DRCellRow",
    "ExperimentReport",
    "GroupRow",
    "PartitionReport",
    "QualityReport",
    "RobustnessRow",
    "RunMetadata",
    "emit_report",
    "render_json",
    # Operations
    "run",
    "quality_eval",
]
