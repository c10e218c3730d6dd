"""Experiment configuration and the flat ``key = value`` config file."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from enum import StrEnum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator

from reprank.attacks import DEFAULT_PROPORTIONS, AttackKind
from reprank.base import ExecutorType, InputError, ParseError
from reprank.dataset_factory import DatasetType
from reprank.engine import EngineConfig
from reprank.independence import RecenteringOptions, TargetMode
from reprank.pipeline import MethodSpec, Mitigation, MitigationKind, RankingMethod

logger = logging.getLogger(__name__)


# Config keys that differ from the field name
_KEY_ALIASES = {"lambda": "lambda_", "format": "output_format"}

# Flag-style keys that set the opposite boolean field
_NEGATED_KEYS = {"no_attacker_attributes": "attackers_in_partitions"}


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return tuple(part.strip() for part in value.split(",") if part.strip())
    return value


class ExperimentConfig(BaseModel):
    """Everything one experiment run needs; every report number follows from it.

    ``iterations`` switches the engine to exactly that many rounds; otherwise
    it iterates until the reputation change drops below ``tol``. List fields
    also accept comma-separated strings, as read from config files.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    dataset: DatasetType = DatasetType.DEMO
    ratings: Path | None = None
    users: Path | None = None
    continent_table: Path | None = None
    max_rating: float | None = Field(None, gt=0)

    lambda_: float = Field(0.5, alias="lambda", gt=0, lt=1)
    iterations: int | None = Field(None, ge=1)
    tol: float = Field(1e-9, ge=0)
    max_iterations: int = Field(100, ge=1)

    mitigation: str = "none"
    attributes: tuple[str, ...] = ()
    min_group_size: int = Field(1, ge=1)
    recentring: TargetMode = TargetMode.MIN
    ddof: int = Field(1, ge=0, le=1)

    alpha: float = Field(0.05, gt=0, lt=1)
    pooled_variance: bool = False

    attack: tuple[AttackKind, ...] = ()
    attack_target: str | None = None
    attack_proportion: tuple[float, ...] = ()
    side_set_size: int = Field(10, ge=1)
    attack_runs: int = Field(1, ge=1)
    attackers_in_partitions: bool = True

    split: float | None = Field(None, gt=0, lt=1)
    per_user_split: bool = False

    seed: int = 0
    out: Path | None = None
    output_format: OutputFormat = Field(OutputFormat.JSON, alias="format")
    timestamps: bool = False
    max_workers: int = Field(1, ge=1)
    executor: ExecutorType = ExecutorType.THREAD

    @field_validator("attributes", "attack", "attack_proportion", mode="before")
    @classmethod
    def validate_lists(cls, v: Any) -> Any:
        return _split_list(v)

    def engine_config(self) -> EngineConfig:
        if self.iterations is not None:
            return EngineConfig.fixed(self.iterations, self.lambda_)
        return EngineConfig(
            lambda_=self.lambda_, max_iterations=self.max_iterations, convergence_tol=self.tol
        )

    def recentring_options(self) -> RecenteringOptions:
        return RecenteringOptions(target=self.recentring, ddof=self.ddof)

    def mitigation_spec(self) -> Mitigation:
        return Mitigation.parse(self.mitigation, self.min_group_size, self.recentring_options())

    def method(self) -> MethodSpec:
        return MethodSpec(ranking=RankingMethod.REPUTATION, mitigation=self.mitigation_spec())

    def sweep_methods(self) -> list[MethodSpec]:
        """AA, plain reputation, and the configured mitigation if any."""
        methods = [MethodSpec(ranking=RankingMethod.AA), MethodSpec()]
        if self.mitigation_spec().kind != MitigationKind.NONE:
            methods.append(self.method())
        return methods

    def proportions(self) -> tuple[float, ...]:
        return self.attack_proportion or DEFAULT_PROPORTIONS

    def seeds(self) -> list[int]:
        return [self.seed + k for k in range(self.attack_runs)]

    def echo(self) -> dict[str, Any]:
        """JSON-safe view of the config for reports."""
        return self.model_dump(mode="json", by_alias=True)


def read_config_file(path: Path | str) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment, dashes in keys become underscores.

    Raises:
        ParseError: On a line without ``=`` or an unreadable file.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise ParseError(f"cannot read config file: {e.strerror}", path) from e
    values: dict[str, str] = {}
    for line_no, line in enumerate(lines, start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        key, sep, value = content.partition("=")
        if not sep or not key.strip():
            raise ParseError(f"expected 'key = value', got {line.strip()!r}", path, line_no)
        values[key.strip().replace("-", "_")] = value.strip()
    logger.debug("Read %d settings from %s", len(values), path)
    return values


def _parse_flag(key: str, value: Any) -> bool:
    try:
        return TypeAdapter(bool).validate_python(value)
    except ValueError:
        raise InputError(f"Invalid value for {key}: {value!r}") from None


def build_config(
    file_values: Mapping[str, Any] | None = None, overrides: Mapping[str, Any] | None = None
) -> ExperimentConfig:
    """Merge config-file values with command-line values; the command line wins.

    ``None`` overrides are ignored so unset flags keep the file's value.

    Raises:
        InputError: If a key is unknown or a value is invalid.
    """
    merged: dict[str, Any] = {}
    for source in (file_values or {}, overrides or {}):
        for key, value in source.items():
            if value is None:
                continue
            name = key.replace("-", "_")
            name = _KEY_ALIASES.get(name, name)
            if name in _NEGATED_KEYS:
                name, value = _NEGATED_KEYS[name], not _parse_flag(key, value)
            merged[name] = value

    known = set(ExperimentConfig.model_fields)
    unknown = sorted(set(merged) - known)
    if unknown:
        raise InputError(f"Unknown config keys: {', '.join(unknown)}")
    try:
        config = ExperimentConfig(**merged)
        config.mitigation_spec()
    except ValueError as e:
        raise InputError(f"Invalid configuration: {e}") from None
    return config
