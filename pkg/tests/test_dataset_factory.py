"""Unit tests for the dataset factory."""

import os
from pathlib import Path

import pytest

from reprank.base import InputError
from reprank.dataset_factory import DatasetType, _get_setting, load_dataset

TEST_DATA_DIR = Path(__file__).parent / "data"


class TestGetSetting:
    """Tests for _get_setting helper function."""

    def test_returns_from_dict_when_present(self) -> None:
        assert _get_setting("KEY", {"KEY": "from_dict"}) == "from_dict"

    def test_dict_takes_precedence_over_env(self) -> None:
        original = os.environ.get("KEY")
        try:
            os.environ["KEY"] = "from_env"
            assert _get_setting("KEY", {"KEY": "from_dict"}) == "from_dict"
            assert _get_setting("KEY", None) == "from_env"
        finally:
            if original is None:
                os.environ.pop("KEY", None)
            else:
                os.environ["KEY"] = original

    def test_returns_none_when_not_found(self) -> None:
        assert _get_setting("NONEXISTENT_KEY_12345", None) is None


class TestLoadDataset:
    def test_demo(self) -> None:
        dataset = load_dataset(DatasetType.DEMO)
        assert dataset.ratings.n_users == 6
        assert dataset.schema.names == ["gender", "age"]

    def test_inline(self) -> None:
        dataset = load_dataset(
            DatasetType.INLINE,
            ratings=TEST_DATA_DIR / "toy" / "ratings.csv",
            users=str(TEST_DATA_DIR / "toy" / "attributes.csv"),
        )
        assert dataset.ratings.n_users == 6

    def test_inline_requires_ratings(self) -> None:
        with pytest.raises(InputError, match="requires --ratings"):
            load_dataset(DatasetType.INLINE, users=TEST_DATA_DIR / "toy" / "attributes.csv")

    def test_movielens(self) -> None:
        directory = TEST_DATA_DIR / "movielens"
        dataset = load_dataset(
            DatasetType.MOVIELENS,
            ratings=directory / "ratings.dat",
            users=directory / "users.dat",
        )
        assert dataset.ratings.max_raw_rating == 5
        assert dataset.schema.names == ["gender", "age", "job"]

    def test_movielens_requires_users(self) -> None:
        with pytest.raises(InputError, match="requires --users"):
            load_dataset(DatasetType.MOVIELENS, ratings=TEST_DATA_DIR / "movielens" / "ratings.dat")


class TestBookCrossingContinentTable:
    directory = TEST_DATA_DIR / "bookcrossing"

    def _load(self, **kwargs):
        return load_dataset(
            DatasetType.BOOKCROSSING,
            ratings=self.directory / "BX-Book-Ratings.csv",
            users=self.directory / "BX-Users.csv",
            **kwargs,
        )

    def test_explicit_table(self) -> None:
        dataset = self._load(continent_table=self.directory / "continents.csv")
        assert dataset.ratings.n_entries == 7

    def test_table_from_settings(self) -> None:
        table = str(self.directory / "continents.csv")
        dataset = self._load(settings={"REPRANK_CONTINENT_TABLE": table})
        assert dataset.schema.names == ["age", "location"]

    def test_missing_table(self) -> None:
        original = os.environ.pop("REPRANK_CONTINENT_TABLE", None)
        try:
            with pytest.raises(InputError, match="REPRANK_CONTINENT_TABLE"):
                self._load()
        finally:
            if original is not None:
                os.environ["REPRANK_CONTINENT_TABLE"] = original
