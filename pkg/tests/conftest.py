"""Shared pytest configuration and fixtures."""

from pathlib import Path

import numpy as np
import pytest
from sybil import Sybil
from sybil.parsers.markdown import PythonCodeBlockParser, SkipParser

from reprank.base import AttributeSchema, Dataset, RatingsMatrix, UserProfiles
from reprank.datasets import demo_dataset

# Test data directory
TEST_DATA_DIR = Path(__file__).parent / "data"

# Symlink mappings for clean documentation examples
DOC_SYMLINKS = {
    "ratings.csv": TEST_DATA_DIR / "toy" / "ratings.csv",
    "attributes.csv": TEST_DATA_DIR / "toy" / "attributes.csv",
}


def _setup_doc_symlinks(namespace):
    """Create symlinks for documentation examples."""
    for link_name, target in DOC_SYMLINKS.items():
        link_path = Path(link_name)
        if not link_path.exists():
            link_path.symlink_to(target.resolve())


def _teardown_doc_symlinks(namespace):
    """Remove symlinks created for documentation examples."""
    for link_name in DOC_SYMLINKS:
        link_path = Path(link_name)
        if link_path.is_symlink():
            link_path.unlink()


# Sybil configuration for testing documentation code examples
# Uses SkipParser to allow skipping examples that need downloaded datasets
pytest_collect_file = Sybil(
    parsers=[
        PythonCodeBlockParser(),
        SkipParser(),
    ],
    patterns=["*.md"],
    path=str(Path(__file__).parent.parent / "docs"),
    setup=_setup_doc_symlinks,
    teardown=_teardown_doc_symlinks,
).pytest()


@pytest.fixture
def demo() -> Dataset:
    """The six-user toy community."""
    return demo_dataset()


@pytest.fixture(scope="session")
def make_dataset():
    """Factory for random 5-star communities with correlated attributes.

    Every user gets one class per attribute; the rating noise of a user grows
    with the user's classes, so reputations depend on demographics.
    """

    def _make(  # noqa: PLR0913
        seed: int = 0,
        n_users: int = 40,
        n_items: int = 20,
        classes: tuple[int, ...] = (2, 2),
        density: float = 0.5,
        shift: float = 0.15,
    ) -> Dataset:
        rng = np.random.default_rng(seed)
        names = [f"a{k}" for k in range(len(classes))]
        labels = [[f"c{j}" for j in range(n)] for n in classes]
        # Correlate attributes: later attributes follow the first most of the time
        first = rng.integers(classes[0], size=n_users)
        assigned = [first]
        for n in classes[1:]:
            follow = rng.random(n_users) < 0.7
            assigned.append(np.where(follow, first % n, rng.integers(n, size=n_users)))

        consensus = rng.uniform(0.3, 0.9, size=n_items)
        entries = []
        for u in range(n_users):
            bias = shift * sum(int(a[u]) for a in assigned) / max(len(classes), 1)
            rated = rng.random(n_items) < density
            rated[rng.integers(n_items)] = True
            for i in np.flatnonzero(rated):
                noise = rng.normal(0, 0.1 + bias)
                stars = np.clip(np.rint(5 * (consensus[i] + noise)), 1, 5)
                entries.append((f"u{u}", f"i{i}", float(stars)))
        ratings = RatingsMatrix.from_entries(
            entries, 5, item_ids=[f"i{i}" for i in range(n_items)]
        )
        schema = AttributeSchema.from_mapping(dict(zip(names, labels)))
        profiles = UserProfiles(
            assignment={
                f"u{u}": {name: labels[k][int(assigned[k][u])] for k, name in enumerate(names)}
                for u in range(n_users)
            }
        )
        return Dataset(name=f"synthetic-{seed}", ratings=ratings, schema=schema, profiles=profiles)

    return _make
