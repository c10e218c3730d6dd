"""MovieLens-1M parser.

Both files use ``::`` as separator: ``UserID::MovieID::Rating::Timestamp``
and ``UserID::Gender::Age::Occupation::Zip-code``. Timestamps and zip codes
are ignored.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from pathlib import Path

from reprank.base import (
    AttributeSchema,
    Dataset,
    InputError,
    ParseError,
    RatingEntry,
    RatingsMatrix,
    UserProfiles,
)
from reprank.datasets.continents import ML1M_AGE_BUCKETS, bucket_age

logger = logging.getLogger(__name__)

ML1M_MAX_RATING = 5
ML1M_ENCODING = "latin-1"

GENDERS = {"M": "m", "F": "f"}

# Occupation codes 0..20 in order
OCCUPATIONS: tuple[str, ...] = (
    "other",
    "academic/educator",
    "artist",
    "clerical/admin",
    "college/grad student",
    "customer service",
    "doctor/health care",
    "executive/managerial",
    "farmer",
    "homemaker",
    "K-12 student",
    "lawyer",
    "programmer",
    "retired",
    "sales/marketing",
    "scientist",
    "self-employed",
    "technician/engineer",
    "tradesman/craftsman",
    "unemployed",
    "writer",
)

ML1M_SCHEMA = AttributeSchema.from_mapping(
    {
        "gender": ("m", "f"),
        "age": ML1M_AGE_BUCKETS.labels,
        "job": OCCUPATIONS,
    }
)


def _split_lines(path: Path, n_fields: int) -> Iterator[tuple[int, list[str]]]:
    try:
        handle = path.open(encoding=ML1M_ENCODING)
    except FileNotFoundError as e:
        raise ParseError("file not found", path) from e
    with handle:
        for line_no, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            fields = stripped.split("::")
            if len(fields) != n_fields:
                raise ParseError(
                    f"expected {n_fields} '::'-separated fields, got {len(fields)}", path, line_no
                )
            yield line_no, fields


def _read_ratings(path: Path) -> list[RatingEntry]:
    entries: list[RatingEntry] = []
    for line_no, (user_id, movie_id, rating, _timestamp) in _split_lines(path, 4):
        try:
            value = int(rating)
        except ValueError:
            raise ParseError(f"rating {rating!r} is not a whole number", path, line_no) from None
        if not 1 <= value <= ML1M_MAX_RATING:
            raise ParseError(f"rating {value} outside 1..{ML1M_MAX_RATING}", path, line_no)
        entries.append((user_id, movie_id, float(value)))
    return entries


def _read_users(path: Path) -> dict[str, dict[str, str | None]]:
    assignment: dict[str, dict[str, str | None]] = {}
    for line_no, (user_id, gender, age, occupation, _zip) in _split_lines(path, 5):
        if gender not in GENDERS:
            raise ParseError(f"unknown gender {gender!r}", path, line_no)
        code = int(occupation) if occupation.isdigit() else -1
        if not 0 <= code < len(OCCUPATIONS):
            raise ParseError(f"unknown occupation code {occupation!r}", path, line_no)
        assignment[user_id] = {
            "gender": GENDERS[gender],
            "age": bucket_age(age, ML1M_AGE_BUCKETS),
            "job": OCCUPATIONS[code],
        }
    return assignment


def parse_movielens(ratings_path: Path | str, users_path: Path | str) -> Dataset:
    """Parse ``ratings.dat`` and ``users.dat`` into a dataset.

    Ratings are normalized by 5. The schema has ``gender`` (m, f), ``age``
    (the seven ML-1M ranges) and ``job`` (the 21 occupations).

    Raises:
        ParseError: On a malformed line, an out-of-range rating or an unknown
            gender or occupation code. The message carries the line number.
    """
    ratings_path = Path(ratings_path)
    users_path = Path(users_path)

    entries = _read_ratings(ratings_path)
    assignment = _read_users(users_path)
    try:
        ratings = RatingsMatrix.from_entries(entries, ML1M_MAX_RATING)
    except InputError as e:
        raise ParseError(str(e), ratings_path) from e

    without_profile = sum(1 for u in ratings.user_ids if u not in assignment)
    if without_profile:
        logger.warning("%d rating users have no line in %s", without_profile, users_path)
    logger.info(
        "Parsed MovieLens: %d users, %d items, %d ratings",
        ratings.n_users,
        ratings.n_items,
        ratings.n_entries,
    )
    return Dataset(
        name="movielens",
        ratings=ratings,
        schema=ML1M_SCHEMA,
        profiles=UserProfiles(assignment=assignment),
    )
