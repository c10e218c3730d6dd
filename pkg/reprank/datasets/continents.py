"""Age buckets and the country to continent table."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path

from reprank.base import InputError
from reprank.datasets._pandas import read_table

logger = logging.getLogger(__name__)


class Continent(StrEnum):
    AF = "AF"
    AS = "AS"
    NA = "NA"
    SA = "SA"
    OC = "OC"
    EU = "EU"


# Sparse continents are merged into four location classes
MERGED_LOCATION = {
    Continent.EU: "EU",
    Continent.AS: "AS+OC",
    Continent.OC: "AS+OC",
    Continent.NA: "NA+SA",
    Continent.SA: "NA+SA",
    Continent.AF: "AF",
}
LOCATION_CLASSES: tuple[str, ...] = ("EU", "AS+OC", "NA+SA", "AF")


def _normalize_country(name: str) -> str:
    return name.strip().lower()


@dataclass(frozen=True)
class ContinentTable:
    """Lower-case country name to continent code."""

    countries: dict[str, Continent] = field(default_factory=dict)

    @classmethod
    def from_mapping(cls, countries: dict[str, str]) -> ContinentTable:
        return cls(
            countries={
                _normalize_country(name): Continent(code.strip().upper())
                for name, code in countries.items()
            }
        )

    @classmethod
    def from_csv(cls, path: Path | str) -> ContinentTable:
        """Load a continent table.

        Two layouts are understood: two columns ``country,continent`` with or
        without a header, and the public country-and-continent codes list
        with ``Continent_Code`` and ``Country_Name`` columns, where only the
        part of the country name before the first comma is kept. Rows with
        other continent codes (Antarctica) are skipped; a country listed
        under two continents keeps the first.

        Raises:
            ParseError: If the file cannot be read.
        """
        frame = read_table(path)
        if {"Continent_Code", "Country_Name"} <= set(frame.columns):
            pairs = zip(
                (name.split(",")[0] for name in frame["Country_Name"]),
                frame["Continent_Code"],
                strict=True,
            )
        else:
            frame = read_table(path, header=None)
            pairs = zip(frame.iloc[:, 0], frame.iloc[:, 1], strict=True)

        codes = {c.value for c in Continent}
        countries: dict[str, Continent] = {}
        for name, raw_code in pairs:
            code = raw_code.strip().upper()
            country = _normalize_country(name)
            if code not in codes or not country:
                continue
            if country in countries:
                logger.debug("Country %s listed twice, keeping %s", country, countries[country])
                continue
            countries[country] = Continent(code)
        logger.info("Loaded %d countries from %s", len(countries), path)
        return cls(countries=countries)

    def continent_of(self, country: str) -> Continent | None:
        return self.countries.get(_normalize_country(country))

    def location_of(self, location: str) -> str | None:
        """Merged location class of a ``city, region, country`` string.

        Only exact matches of the last comma-separated part count.
        """
        continent = self.continent_of(location.rsplit(",", 1)[-1])
        return None if continent is None else MERGED_LOCATION[continent]


@dataclass(frozen=True)
class AgeBucket:
    """Half-open age range ]low, high]; ``high`` None means unbounded."""

    label: str
    low: float
    high: float | None = None

    def contains(self, age: float) -> bool:
        return age > self.low and (self.high is None or age <= self.high)


@dataclass(frozen=True)
class AgeBuckets:
    """Ordered, disjoint, contiguous age ranges.

    Ages above ``max_age`` are treated as invalid.
    """

    buckets: tuple[AgeBucket, ...]
    max_age: float | None = None

    def __post_init__(self) -> None:
        if not self.buckets:
            raise InputError("At least one age bucket is required")
        for previous, current in zip(self.buckets, self.buckets[1:], strict=False):
            if previous.high is None or previous.high != current.low:
                raise InputError(
                    f"Age buckets {previous.label!r} and {current.label!r} are not contiguous"
                )

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(b.label for b in self.buckets)


ML1M_AGE_BUCKETS = AgeBuckets(
    buckets=(
        AgeBucket("<18", 0, 17),
        AgeBucket("18-24", 17, 24),
        AgeBucket("25-34", 24, 34),
        AgeBucket("35-44", 34, 44),
        AgeBucket("45-49", 44, 49),
        AgeBucket("50-55", 49, 55),
        AgeBucket(">55", 55),
    )
)

BOOKCROSSING_AGE_BUCKETS = AgeBuckets(
    buckets=(
        AgeBucket("<20", 0, 20),
        AgeBucket("20-40", 20, 40),
        AgeBucket("40-60", 40, 60),
        AgeBucket(">60", 60),
    ),
    max_age=110,
)


def bucket_age(age: float | str | None, buckets: AgeBuckets) -> str | None:
    """Label of the bucket containing ``age``; None for a missing or invalid age."""
    if age is None:
        return None
    try:
        value = float(age)
    except (TypeError, ValueError):
        return None
    if math.isnan(value) or (buckets.max_age is not None and value > buckets.max_age):
        return None
    for bucket in buckets.buckets:
        if bucket.contains(value):
            return bucket.label
    return None
