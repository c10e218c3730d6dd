"""Sparse user x item matrix of normalized ratings."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse

from reprank.base.errors import InputError

# One (user_id, item_id, rating) triple
RatingEntry = tuple[str, str, float]


@dataclass(frozen=True, eq=False)
class RatingsMatrix:
    """Immutable sparse matrix of ratings normalized into ]0,1].

    Users and items are opaque string ids mapped to dense row/column
    indices. A stored zero never occurs: zero means "not rated".

    Build instances with :meth:`from_entries`; the constructor expects an
    already validated CSR array.
    """

    user_ids: tuple[str, ...]
    item_ids: tuple[str, ...]
    matrix: sparse.csr_array
    max_raw_rating: float

    @classmethod
    def from_entries(
        cls,
        entries: Iterable[RatingEntry],
        max_raw_rating: float,
        *,
        normalized: bool = False,
        user_ids: Sequence[str] | None = None,
        item_ids: Sequence[str] | None = None,
    ) -> RatingsMatrix:
        """Build a matrix from (user, item, rating) triples.

        Args:
            entries: Ratings, raw (divided by ``max_raw_rating``) unless
                ``normalized`` is set.
            max_raw_rating: Maximum allowed raw rating, the normalization divisor.
            normalized: Whether ratings are already in ]0,1].
            user_ids: Full user universe in row order. Users without ratings
                are allowed. Defaults to first-appearance order.
            item_ids: Full item universe in column order. Defaults to
                first-appearance order.

        Raises:
            InputError: On duplicate (user, item) pairs, ratings outside
                ]0,1] after normalization, or ids missing from the universes.
        """
        if max_raw_rating <= 0:
            raise InputError(f"max_raw_rating must be positive, got {max_raw_rating}")

        rows_ids: list[str] = []
        cols_ids: list[str] = []
        values: list[float] = []
        for user_id, item_id, rating in entries:
            rows_ids.append(str(user_id))
            cols_ids.append(str(item_id))
            values.append(float(rating))

        users = list(user_ids) if user_ids is not None else list(dict.fromkeys(rows_ids))
        items = list(item_ids) if item_ids is not None else list(dict.fromkeys(cols_ids))
        user_index = {u: i for i, u in enumerate(users)}
        item_index = {it: j for j, it in enumerate(items)}
        if len(user_index) != len(users) or len(item_index) != len(items):
            raise InputError("user and item ids must be unique")

        try:
            rows = np.fromiter((user_index[u] for u in rows_ids), dtype=np.int64, count=len(values))
            cols = np.fromiter((item_index[i] for i in cols_ids), dtype=np.int64, count=len(values))
        except KeyError as e:
            raise InputError(f"Rating references unknown id {e.args[0]!r}") from None

        data = np.asarray(values, dtype=np.float64)
        if not normalized:
            data = data / max_raw_rating
        if data.size and (np.any(~np.isfinite(data)) or data.min() <= 0 or data.max() > 1):
            raise InputError("Every rating must lie in ]0,1] after normalization")

        if data.size:
            keys = rows * max(len(items), 1) + cols
            if np.unique(keys).size != keys.size:
                raise InputError("At most one rating per (user, item) pair is allowed")

        matrix = sparse.csr_array(
            (data, (rows, cols)), shape=(len(users), len(items)), dtype=np.float64
        )
        matrix.sort_indices()
        return cls(
            user_ids=tuple(users),
            item_ids=tuple(items),
            matrix=matrix,
            max_raw_rating=float(max_raw_rating),
        )

    @property
    def n_users(self) -> int:
        return len(self.user_ids)

    @property
    def n_items(self) -> int:
        return len(self.item_ids)

    @property
    def n_entries(self) -> int:
        return int(self.matrix.nnz)

    @property
    def delta_r(self) -> float:
        """Max minus min stored normalized rating (0 for an empty matrix)."""
        if self.matrix.nnz == 0:
            return 0.0
        return float(self.matrix.data.max() - self.matrix.data.min())

    @cached_property
    def user_index(self) -> dict[str, int]:
        return {u: i for i, u in enumerate(self.user_ids)}

    @cached_property
    def item_index(self) -> dict[str, int]:
        return {it: j for j, it in enumerate(self.item_ids)}

    @cached_property
    def coo(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(rows, cols, data) arrays in row-major order."""
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return (
            np.asarray(coo.row[order], dtype=np.int64),
            np.asarray(coo.col[order], dtype=np.int64),
            np.asarray(coo.data[order], dtype=np.float64),
        )

    @cached_property
    def user_counts(self) -> np.ndarray:
        """|I_u| for every row."""
        return np.diff(self.matrix.indptr).astype(np.int64)

    @cached_property
    def item_counts(self) -> np.ndarray:
        """|U_i| for every column."""
        return np.bincount(self.coo[1], minlength=self.n_items).astype(np.int64)

    def entries(self) -> Iterator[RatingEntry]:
        """Iterate (user, item, normalized rating) in row-major order."""
        rows, cols, data = self.coo
        for r, c, v in zip(rows.tolist(), cols.tolist(), data.tolist(), strict=True):
            yield self.user_ids[r], self.item_ids[c], v

    def raw_entries(self) -> Iterator[RatingEntry]:
        """Iterate entries with ratings denormalized to the raw scale."""
        for user_id, item_id, value in self.entries():
            yield user_id, item_id, self.denormalize(value)

    def denormalize(self, value: float) -> float:
        raw = value * self.max_raw_rating
        nearest = round(raw)
        # Whole-star inputs come back exactly
        return float(nearest) if abs(raw - nearest) < 1e-9 else raw

    def rating(self, user_id: str, item_id: str) -> float:
        """Normalized rating, 0.0 when the user did not rate the item."""
        return float(self.matrix[self.user_index[user_id], self.item_index[item_id]])

    def items_of(self, user_id: str) -> list[str]:
        """I_u: items rated by ``user_id``."""
        row = self.user_index[user_id]
        start, end = self.matrix.indptr[row], self.matrix.indptr[row + 1]
        return [self.item_ids[j] for j in self.matrix.indices[start:end]]

    def raters_of(self, item_id: str) -> list[str]:
        """U_i: users who rated ``item_id``."""
        rows, cols, _ = self.coo
        col = self.item_index[item_id]
        return [self.user_ids[r] for r in rows[cols == col]]

    def active_users(self) -> list[str]:
        """Users with at least one rating."""
        return [u for u, n in zip(self.user_ids, self.user_counts, strict=True) if n > 0]

    def inactive_users(self) -> list[str]:
        return [u for u, n in zip(self.user_ids, self.user_counts, strict=True) if n == 0]

    def without_inactive_users(self) -> RatingsMatrix:
        """Return a matrix restricted to users with at least one rating."""
        keep = self.user_counts > 0
        if keep.all():
            return self
        new_row = np.cumsum(keep) - 1
        rows, cols, data = self.coo
        matrix = sparse.csr_array(
            (data, (new_row[rows], cols)),
            shape=(int(keep.sum()), self.n_items),
            dtype=np.float64,
        )
        matrix.sort_indices()
        return RatingsMatrix(
            user_ids=tuple(u for u, k in zip(self.user_ids, keep, strict=True) if k),
            item_ids=self.item_ids,
            matrix=matrix,
            max_raw_rating=self.max_raw_rating,
        )

    def select_entries(self, mask: np.ndarray) -> RatingsMatrix:
        """Keep the entries flagged in ``mask`` (aligned with :attr:`coo`).

        The user and item universes are preserved.
        """
        rows, cols, data = self.coo
        mask = np.asarray(mask, dtype=bool)
        matrix = sparse.csr_array(
            (data[mask], (rows[mask], cols[mask])), shape=self.matrix.shape, dtype=np.float64
        )
        matrix.sort_indices()
        return RatingsMatrix(
            user_ids=self.user_ids,
            item_ids=self.item_ids,
            matrix=matrix,
            max_raw_rating=self.max_raw_rating,
        )

    def with_new_users(self, entries: Iterable[RatingEntry]) -> RatingsMatrix:
        """Append new users rating existing items; ratings are normalized.

        Raises:
            InputError: If a new entry names an existing user or an unknown item.
        """
        new_entries = list(entries)
        new_users = list(dict.fromkeys(u for u, _, _ in new_entries))
        clash = set(new_users) & set(self.user_ids)
        if clash:
            raise InputError(f"New users collide with existing ids: {sorted(clash)[:5]}")
        appended = RatingsMatrix.from_entries(
            new_entries,
            self.max_raw_rating,
            normalized=True,
            user_ids=new_users,
            item_ids=self.item_ids,
        )
        return RatingsMatrix(
            user_ids=self.user_ids + appended.user_ids,
            item_ids=self.item_ids,
            matrix=sparse.csr_array(sparse.vstack([self.matrix, appended.matrix], format="csr")),
            max_raw_rating=self.max_raw_rating,
        )
