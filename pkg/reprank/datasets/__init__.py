"""Dataset parsers, attribute bucketing and train/test splits.

MovieLens parsing and the demo dataset need only the core dependencies;
BookCrossing, inline files and continent tables need ``reprank[datasets]``.
"""

from reprank.datasets.bookcrossing import BOOKCROSSING_SCHEMA, parse_bookcrossing
from reprank.datasets.continents import (
    BOOKCROSSING_AGE_BUCKETS,
    LOCATION_CLASSES,
    ML1M_AGE_BUCKETS,
    AgeBucket,
    AgeBuckets,
    Continent,
    ContinentTable,
    bucket_age,
)
from reprank.datasets.inline import demo_dataset, parse_inline
from reprank.datasets.movielens import ML1M_SCHEMA, OCCUPATIONS, parse_movielens
from reprank.datasets.split import holdout_split

__all__ = [
    # Buckets and tables
    "AgeBucket",
    "AgeBuckets",
    "Continent",
    "ContinentTable",
    "BOOKCROSSING_AGE_BUCKETS",
    "ML1M_AGE_BUCKETS",
    "LOCATION_CLASSES",
    "bucket_age",
    # Parsers
    "BOOKCROSSING_SCHEMA",
    "ML1M_SCHEMA",
    "OCCUPATIONS",
    "parse_bookcrossing",
    "parse_movielens",
    "parse_inline",
    "demo_dataset",
    # Splits
    "holdout_split",
]
