"""BookCrossing parser.

Files are semicolon-separated with double-quoted fields and Latin-1 bytes:
``"User-ID";"ISBN";"Book-Rating"`` and ``"User-ID";"Location";"Age"``.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from reprank.base import (
    AttributeSchema,
    Dataset,
    InputError,
    ParseError,
    RatingsMatrix,
    UserProfiles,
)
from reprank.datasets._pandas import read_table, require_columns
from reprank.datasets.continents import (
    BOOKCROSSING_AGE_BUCKETS,
    LOCATION_CLASSES,
    ContinentTable,
    bucket_age,
)

logger = logging.getLogger(__name__)

BOOKCROSSING_MAX_RATING = 10

BOOKCROSSING_SCHEMA = AttributeSchema.from_mapping(
    {
        "age": BOOKCROSSING_AGE_BUCKETS.labels,
        "location": LOCATION_CLASSES,
    }
)

_READ_OPTIONS = {"sep": ";", "quotechar": '"', "escapechar": "\\", "encoding": "latin-1"}


def _read_ratings(path: Path) -> list[tuple[str, str, float]]:
    frame = read_table(path, **_READ_OPTIONS)
    require_columns(frame, ["User-ID", "ISBN", "Book-Rating"], path)

    values = frame["Book-Rating"].str.strip()
    numeric = values.str.fullmatch(r"\d+")
    if not numeric.all():
        # +2: header line and 1-based numbering
        bad = int(np.flatnonzero(~numeric.to_numpy())[0])
        raise ParseError(f"rating {values.iloc[bad]!r} is not a whole number", path, bad + 2)
    frame = frame.assign(rating=values.astype(int))

    implicit = frame["rating"] == 0
    if implicit.any():
        logger.info("Dropping %d implicit (zero) ratings", int(implicit.sum()))
    frame = frame[~implicit]
    out_of_range = frame["rating"] > BOOKCROSSING_MAX_RATING
    if out_of_range.any():
        raise ParseError(
            f"{int(out_of_range.sum())} ratings exceed {BOOKCROSSING_MAX_RATING}", path
        )

    duplicated = frame.duplicated(subset=["User-ID", "ISBN"], keep="first")
    if duplicated.any():
        logger.warning("Dropping %d duplicate (user, book) ratings", int(duplicated.sum()))
        frame = frame[~duplicated]

    return list(
        zip(
            frame["User-ID"].str.strip(),
            frame["ISBN"].str.strip(),
            frame["rating"].astype(float),
            strict=True,
        )
    )


def _read_users(path: Path, table: ContinentTable) -> dict[str, dict[str, str | None]]:
    frame = read_table(path, **_READ_OPTIONS)
    require_columns(frame, ["User-ID", "Location", "Age"], path)

    assignment: dict[str, dict[str, str | None]] = {}
    unmapped = 0
    for user_id, location, age in zip(
        frame["User-ID"].str.strip(), frame["Location"], frame["Age"], strict=True
    ):
        merged = table.location_of(location)
        if merged is None:
            unmapped += 1
        assignment[user_id] = {
            "age": bucket_age(age, BOOKCROSSING_AGE_BUCKETS),
            "location": merged,
        }
    if unmapped:
        logger.warning("%d users have a country missing from the continent table", unmapped)
    return assignment


def parse_bookcrossing(
    ratings_path: Path | str, users_path: Path | str, table: ContinentTable
) -> Dataset:
    """Parse the BookCrossing ratings and users files into a dataset.

    Zero ratings (implicit feedback) are dropped and the rest normalized by
    10. A repeated (user, book) pair keeps its first rating. The schema has
    ``age`` (<20, 20-40, 40-60, >60) and ``location`` (EU, AS+OC, NA+SA, AF).
    Users whose country is not in ``table`` keep their ratings with a
    missing location.

    Raises:
        ParseError: If a file is malformed or lacks a column.
        ImportError: If pandas is not installed.
    """
    ratings_path = Path(ratings_path)
    users_path = Path(users_path)

    entries = _read_ratings(ratings_path)
    assignment = _read_users(users_path, table)
    try:
        ratings = RatingsMatrix.from_entries(entries, BOOKCROSSING_MAX_RATING)
    except InputError as e:
        raise ParseError(str(e), ratings_path) from e

    located = sum(
        1 for u in ratings.user_ids if assignment.get(u, {}).get("location") is not None
    )
    logger.info(
        "Parsed BookCrossing: %d users (%d located), %d items, %d ratings",
        ratings.n_users,
        located,
        ratings.n_items,
        ratings.n_entries,
    )
    return Dataset(
        name="bookcrossing",
        ratings=ratings,
        schema=BOOKCROSSING_SCHEMA,
        profiles=UserProfiles(assignment=assignment),
    )
