"""Small datasets written as a dense matrix plus an attributes table.

Ratings file: header ``user,<item ids>``, one row per user, blank or 0 for
"not rated". Attributes file: header ``user,<attribute names>``, blank for a
missing class. Class order is the order of first appearance.
"""

from __future__ import annotations

import logging
from pathlib import Path

from reprank.base import (
    AttributeSchema,
    Dataset,
    InputError,
    ParseError,
    RatingEntry,
    RatingsMatrix,
    SchemaError,
    UserProfiles,
)
from reprank.datasets._pandas import read_table

logger = logging.getLogger(__name__)


def _text(value: object) -> str:
    # Short rows come back as NaN floats
    return value.strip() if isinstance(value, str) else ""


def _read_matrix(path: Path, delimiter: str) -> tuple[list[str], list[str], list[RatingEntry]]:
    frame = read_table(path, sep=delimiter)
    if frame.shape[1] < 2:  # noqa: PLR2004
        raise ParseError("expected a user column and at least one item column", path, line=1)
    users = [_text(u) for u in frame.iloc[:, 0]]
    items = [str(c).strip() for c in frame.columns[1:]]
    entries: list[RatingEntry] = []
    for row, user_id in enumerate(users):
        for col, item_id in enumerate(items, start=1):
            cell = _text(frame.iat[row, col])
            if not cell:
                continue
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(f"rating {cell!r} is not a number", path, row + 2) from None
            if value != 0:
                entries.append((user_id, item_id, value))
    return users, items, entries


def _read_attributes(path: Path, delimiter: str) -> tuple[AttributeSchema, UserProfiles]:
    frame = read_table(path, sep=delimiter)
    if frame.shape[1] < 2:  # noqa: PLR2004
        raise ParseError("expected a user column and at least one attribute column", path, 1)
    names = [str(c).strip() for c in frame.columns[1:]]
    classes: dict[str, dict[str, None]] = {name: {} for name in names}
    assignment: dict[str, dict[str, str | None]] = {}
    for row in frame.itertuples(index=False):
        user_id = _text(row[0])
        labels: dict[str, str | None] = {}
        for name, cell in zip(names, row[1:], strict=True):
            label = _text(cell) or None
            if label is not None:
                classes[name][label] = None
            labels[name] = label
        assignment[user_id] = labels
    try:
        schema = AttributeSchema.from_mapping({name: list(seen) for name, seen in classes.items()})
    except ValueError as e:
        raise SchemaError(f"{path}: {e}") from e
    return schema, UserProfiles(assignment=assignment)


def parse_inline(
    ratings_path: Path | str,
    attributes_path: Path | str,
    max_rating: float | None = None,
    *,
    delimiter: str = ",",
    name: str = "inline",
) -> Dataset:
    """Parse an inline dataset.

    Args:
        ratings_path: Dense ratings matrix file.
        attributes_path: Attributes table file.
        max_rating: Normalization divisor; the largest rating when omitted.
        delimiter: Field separator of both files.
        name: Dataset name used in reports.

    Raises:
        ParseError: If a file is malformed or a rating is out of range.
        SchemaError: If an attribute column has no class at all.
    """
    ratings_path = Path(ratings_path)
    users, items, entries = _read_matrix(ratings_path, delimiter)
    if not entries:
        raise ParseError("no ratings found", ratings_path)
    divisor = max_rating if max_rating is not None else max(v for _, _, v in entries)
    try:
        ratings = RatingsMatrix.from_entries(entries, divisor, user_ids=users, item_ids=items)
    except InputError as e:
        raise ParseError(str(e), ratings_path) from e

    schema, profiles = _read_attributes(Path(attributes_path), delimiter)
    logger.info(
        "Parsed inline dataset %s: %d users, %d items, %d ratings",
        name,
        ratings.n_users,
        ratings.n_items,
        ratings.n_entries,
    )
    return Dataset(name=name, ratings=ratings, schema=schema, profiles=profiles)


# The six-user, five-item toy community, on a 5-star scale
_DEMO_ITEMS = ("i1", "i2", "i3", "i4", "i5")
_DEMO_ROWS = {
    "u1": ((5, 4, 5, 2, 3), "A", "]0,40]"),
    "u2": ((5, 5, 5, 3, 3), "A", "]0,40]"),
    "u3": ((5, 5, 5, 3, 3), "A", "]40,inf["),
    "u4": ((4, 5, 5, 2, 3), "A", "]40,inf["),
    "u5": ((2, 4, 3, 5, 1), "B", "]0,40]"),
    "u6": ((3, 4, 3, 4, 2), "B", "]0,40]"),
}


def demo_dataset() -> Dataset:
    """Toy community with a gender (A, B) and an age (]0,40], ]40,inf[) attribute.

    Needs no files and no optional dependency.
    """
    entries = [
        (user_id, item_id, float(value))
        for user_id, (values, _, _) in _DEMO_ROWS.items()
        for item_id, value in zip(_DEMO_ITEMS, values, strict=True)
    ]
    return Dataset(
        name="demo",
        ratings=RatingsMatrix.from_entries(entries, 5, item_ids=_DEMO_ITEMS),
        schema=AttributeSchema.from_mapping({"gender": ("A", "B"), "age": ("]0,40]", "]40,inf[")}),
        profiles=UserProfiles(
            assignment={
                user_id: {"gender": gender, "age": age}
                for user_id, (_, gender, age) in _DEMO_ROWS.items()
            }
        ),
    )
