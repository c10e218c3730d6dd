"""Per-user reputation and per-item ranking vectors."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class _ScoreVector:
    ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "ids", tuple(self.ids))
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (len(self.ids),):
            raise ValueError(f"expected {len(self.ids)} values, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_index", {key: i for i, key in enumerate(self.ids)})

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, key: object) -> bool:
        return key in self._index  # type: ignore[attr-defined]

    def __getitem__(self, key: str) -> float:
        return float(self.values[self._index[key]])  # type: ignore[attr-defined]

    def get(self, key: str, default: float | None = None) -> float | None:
        idx = self._index.get(key)  # type: ignore[attr-defined]
        return default if idx is None else float(self.values[idx])

    def index_of(self, key: str) -> int:
        return self._index[key]  # type: ignore[attr-defined]

    def take(self, keys: Iterable[str]) -> np.ndarray:
        """Values for ``keys`` in the given order; keys must be present."""
        index = self._index  # type: ignore[attr-defined]
        return self.values[[index[k] for k in keys]]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.ids, self.values.tolist(), strict=True))


@dataclass(frozen=True, eq=False)
class ReputationVector(_ScoreVector):
    """Reputation c_u of every user that took part in the computation."""

    @classmethod
    def from_mapping(cls, values: Mapping[str, float]) -> ReputationVector:
        return cls(ids=tuple(values), values=np.fromiter(values.values(), dtype=np.float64))

    @property
    def user_ids(self) -> tuple[str, ...]:
        return self.ids

    def group_values(self, members: Iterable[str]) -> np.ndarray:
        """Values of the ``members`` present here, ordered by user id.

        Group statistics always sum in this order so that means computed in
        different modules agree bit for bit.
        """
        index = self._index  # type: ignore[attr-defined]
        present = sorted(m for m in members if m in index)
        return self.values[[index[m] for m in present]]

    def replace(self, updates: Mapping[str, float]) -> ReputationVector:
        """Return a copy with the given users' values replaced."""
        values = self.values.copy()
        for user_id, value in updates.items():
            values[self.index_of(user_id)] = value
        return ReputationVector(ids=self.ids, values=values)


@dataclass(frozen=True, eq=False)
class RankingVector(_ScoreVector):
    """Ranking r_i of every rated item; items nobody rated are listed in ``unrated``."""

    unrated: frozenset[str] = field(default_factory=frozenset)

    @classmethod
    def from_mapping(
        cls, values: Mapping[str, float], unrated: Iterable[str] = ()
    ) -> RankingVector:
        return cls(
            ids=tuple(values),
            values=np.fromiter(values.values(), dtype=np.float64),
            unrated=frozenset(unrated),
        )

    @property
    def item_ids(self) -> tuple[str, ...]:
        return self.ids

    def ordered_items(self) -> list[str]:
        """Items from highest to lowest ranking, ties by ascending item id."""
        return [
            item for _, item in sorted(zip((-self.values).tolist(), self.ids, strict=True))
        ]
