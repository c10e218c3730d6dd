"""Random train/test splits of the rating entries."""

from __future__ import annotations

import logging

import numpy as np

from reprank.base import InputError, RatingsMatrix

logger = logging.getLogger(__name__)


def holdout_split(
    R: RatingsMatrix,
    test_fraction: float,
    seed: int = 0,
    *,
    per_user: bool = False,
) -> tuple[RatingsMatrix, RatingsMatrix]:
    """Partition the entries of ``R`` into train and test matrices.

    ``round(n * test_fraction)`` entries go to the test side, drawn
    uniformly from all entries, or from every user separately with
    ``per_user``. Both sides keep the full user and item universes; users
    left without training ratings drop out of the engine on their own.

    Raises:
        InputError: If ``test_fraction`` is outside ]0,1[.
    """
    if not 0 < test_fraction < 1:
        raise InputError(f"test_fraction must lie in ]0,1[, got {test_fraction}")
    rng = np.random.default_rng(seed)
    n = R.n_entries
    test = np.zeros(n, dtype=bool)

    if per_user:
        # Entries of row u occupy [indptr[u], indptr[u + 1]) in row-major order
        indptr = R.matrix.indptr
        for row in range(R.n_users):
            start, end = int(indptr[row]), int(indptr[row + 1])
            k = round((end - start) * test_fraction)
            if k:
                test[start + rng.permutation(end - start)[:k]] = True
    else:
        test[rng.permutation(n)[: round(n * test_fraction)]] = True

    train_matrix, test_matrix = R.select_entries(~test), R.select_entries(test)
    logger.info(
        "Split %d ratings into %d train and %d test", n, train_matrix.n_entries, test.sum()
    )
    return train_matrix, test_matrix
