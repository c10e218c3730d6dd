"""Factory for loading datasets by type."""

from __future__ import annotations

import os
from enum import StrEnum
from pathlib import Path

from reprank.base import Dataset, InputError


class DatasetType(StrEnum):
    """Supported dataset sources."""

    MOVIELENS = "movielens"
    BOOKCROSSING = "bookcrossing"
    INLINE = "inline"
    DEMO = "demo"


def _get_setting(key: str, settings: dict[str, str] | None) -> str | None:
    """Get setting from dict or environment variable."""
    if settings and key in settings:
        return settings[key]
    return os.environ.get(key)


def _require(path: Path | str | None, flag: str, dataset_type: DatasetType) -> Path:
    if path is None:
        raise InputError(f"Dataset {dataset_type.value} requires {flag}")
    return Path(path)


def load_dataset(  # noqa: PLR0913
    dataset_type: DatasetType,
    *,
    ratings: Path | str | None = None,
    users: Path | str | None = None,
    continent_table: Path | str | None = None,
    max_rating: float | None = None,
    settings: dict[str, str] | None = None,
) -> Dataset:
    """Load a dataset by type with unified parameters.

    Args:
        dataset_type: DatasetType enum value specifying which parser to use:
            - DatasetType.MOVIELENS - ML-1M ``ratings.dat`` and ``users.dat``
            - DatasetType.BOOKCROSSING - BookCrossing ratings and users CSVs
            - DatasetType.INLINE - dense ratings matrix and attributes table
            - DatasetType.DEMO - built-in toy community, no files
        ratings: Ratings file (matrix file for inline datasets).
        users: Users file (attributes table for inline datasets).
        continent_table: Country to continent table for BookCrossing. If None,
            reads REPRANK_CONTINENT_TABLE from ``settings`` or the environment.
        max_rating: Normalization divisor for inline datasets.
        settings: Override settings dict used before environment variables.

    Returns:
        Parsed dataset.

    Raises:
        InputError: If a required path is missing.
        ParseError: If a file is malformed.

    Example:
        >>> from reprank.dataset_factory import DatasetType, load_dataset
        >>> dataset = load_dataset(DatasetType.DEMO)
        >>> dataset.ratings.n_users
        6
    """
    if dataset_type == DatasetType.MOVIELENS:
        from reprank.datasets.movielens import parse_movielens

        return parse_movielens(
            _require(ratings, "--ratings", dataset_type), _require(users, "--users", dataset_type)
        )

    elif dataset_type == DatasetType.BOOKCROSSING:
        from reprank.datasets.bookcrossing import parse_bookcrossing
        from reprank.datasets.continents import ContinentTable

        table_path = continent_table or _get_setting("REPRANK_CONTINENT_TABLE", settings)
        if not table_path:
            raise InputError(
                "Continent table required. Pass --continent-table or set "
                "REPRANK_CONTINENT_TABLE environment variable."
            )
        return parse_bookcrossing(
            _require(ratings, "--ratings", dataset_type),
            _require(users, "--users", dataset_type),
            ContinentTable.from_csv(table_path),
        )

    elif dataset_type == DatasetType.INLINE:
        from reprank.datasets.inline import parse_inline

        return parse_inline(
            _require(ratings, "--ratings", dataset_type),
            _require(users, "--users", dataset_type),
            max_rating,
        )

    elif dataset_type == DatasetType.DEMO:
        from reprank.datasets.inline import demo_dataset

        return demo_dataset()

    else:
        raise InputError(f"Unknown dataset type: {dataset_type}")
