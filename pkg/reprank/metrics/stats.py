"""Evaluation statistics: disparate reputation, location test, Kendall tau, RMSE."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence

import numpy as np
from scipy import special, stats

from reprank.base import (
    AttributeSchema,
    GroupPartition,
    InputError,
    RankingVector,
    ReputationVector,
    UserProfiles,
    build_partition,
)
from reprank.metrics.models import BoxSummary, DRCell, DRMatrix, LTResult


def disparate_reputation(
    c: ReputationVector, group_a: Iterable[str], group_b: Iterable[str]
) -> float:
    """Mean reputation of ``group_a`` minus that of ``group_b``.

    Users without a reputation in ``c`` are ignored.

    Raises:
        InputError: If either group has no member in ``c``.
    """
    values_a = c.group_values(group_a)
    values_b = c.group_values(group_b)
    if values_a.size == 0 or values_b.size == 0:
        raise InputError("Both groups need at least one user with a reputation")
    return float(np.mean(values_a)) - float(np.mean(values_b))


def location_test(
    sample_a: Sequence[float] | np.ndarray,
    sample_b: Sequence[float] | np.ndarray,
    alpha: float = 0.05,
    *,
    equal_var: bool = False,
) -> LTResult:
    """Two-sided two-sample t-test of equal means.

    Welch's unequal-variance test by default; ``equal_var=True`` pools the
    variances. The p-value comes from the regularized incomplete beta
    function of the t distribution.

    Raises:
        InputError: If a sample has fewer than two values or ``alpha`` is
            outside ]0,1[.
    """
    if not 0 < alpha < 1:
        raise InputError(f"alpha must lie in ]0,1[, got {alpha}")
    a = np.asarray(sample_a, dtype=np.float64)
    b = np.asarray(sample_b, dtype=np.float64)
    n_a, n_b = a.size, b.size
    if n_a < 2 or n_b < 2:  # noqa: PLR2004
        raise InputError(f"Each sample needs at least 2 values, got {n_a} and {n_b}")

    var_a = float(np.var(a, ddof=1))
    var_b = float(np.var(b, ddof=1))
    diff = float(np.mean(a)) - float(np.mean(b))

    if equal_var:
        df = float(n_a + n_b - 2)
        pooled = ((n_a - 1) * var_a + (n_b - 1) * var_b) / df
        se2 = pooled * (1 / n_a + 1 / n_b)
    else:
        se2 = var_a / n_a + var_b / n_b
        if se2 > 0:
            df = se2**2 / ((var_a / n_a) ** 2 / (n_a - 1) + (var_b / n_b) ** 2 / (n_b - 1))
        else:
            df = float(n_a + n_b - 2)

    if se2 == 0:
        # Both samples constant
        if diff == 0:
            return LTResult(0.0, df, 1.0, False, alpha, equal_var)
        return LTResult(math.copysign(math.inf, diff), df, 0.0, True, alpha, equal_var)

    statistic = diff / math.sqrt(se2)
    p_value = float(special.betainc(df / 2, 0.5, df / (df + statistic**2)))
    p_value = min(max(p_value, 0.0), 1.0)
    return LTResult(statistic, df, p_value, p_value < alpha, alpha, equal_var)


def dr_matrix(
    c: ReputationVector,
    partition: GroupPartition,
    alpha: float = 0.05,
    *,
    equal_var: bool = False,
) -> DRMatrix:
    """Pairwise disparate reputation and location test between groups.

    Groups appear in declared class order; groups without any reputation in
    ``c`` are left out. Pairs involving a single-member group get no test.

    Raises:
        InputError: If fewer than two groups have reputations.
    """
    samples: dict[str, np.ndarray] = {}
    for key, members in partition.groups.items():
        values = c.group_values(members)
        if values.size:
            samples[partition.label(key)] = values
    if len(samples) < 2:  # noqa: PLR2004
        raise InputError(f"Need at least 2 populated groups, got {len(samples)}")

    labels = tuple(samples)
    means = {label: float(np.mean(values)) for label, values in samples.items()}
    cells: dict[tuple[str, str], DRCell] = {}
    for i, a in enumerate(labels):
        for b in labels[i + 1 :]:
            test = None
            if samples[a].size >= 2 and samples[b].size >= 2:  # noqa: PLR2004
                test = location_test(samples[a], samples[b], alpha, equal_var=equal_var)
            cells[(a, b)] = DRCell(delta=means[a] - means[b], test=test)

    return DRMatrix(
        attributes=partition.key_attributes,
        classes=labels,
        means=means,
        sizes={label: int(values.size) for label, values in samples.items()},
        cells=cells,
        alpha=alpha,
    )


def kendall_tau(r1: RankingVector, r2: RankingVector) -> float:
    """Tie-corrected Kendall tau (tau-b) over the items ranked in both vectors.

    Two all-tied vectors count as identical orders (1.0); one all-tied
    vector against a varying one gives 0.0.

    Raises:
        InputError: If fewer than two items are ranked in both.
    """
    common = [item for item in r1.item_ids if item in r2]
    if len(common) < 2:  # noqa: PLR2004
        raise InputError(f"Kendall tau needs at least 2 common items, got {len(common)}")
    x = r1.take(common)
    y = r2.take(common)
    x_flat = bool(np.all(x == x[0]))
    y_flat = bool(np.all(y == y[0]))
    if x_flat or y_flat:
        return 1.0 if x_flat and y_flat else 0.0
    tau, _ = stats.kendalltau(x, y, variant="b")
    return float(tau)


def rmse(u: Sequence[float] | np.ndarray, v: Sequence[float] | np.ndarray) -> float:
    """Root mean squared difference of two equal-length samples.

    Raises:
        InputError: On a length mismatch or empty input.
    """
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    if a.shape != b.shape or a.size == 0:
        raise InputError(
            f"rmse needs two non-empty samples of equal length, got {a.size} and {b.size}"
        )
    return float(np.sqrt(np.mean((a - b) ** 2)))


def box_summary(values: Sequence[float] | np.ndarray) -> BoxSummary:
    """Min, quartiles, max, mean and count; the data behind a box-whisker chart."""
    data = np.asarray(values, dtype=np.float64)
    if data.size == 0:
        raise InputError("box_summary needs at least one value")
    q1, median, q3 = np.percentile(data, [25, 50, 75])
    return BoxSummary(
        min=float(data.min()),
        q1=float(q1),
        median=float(median),
        q3=float(q3),
        max=float(data.max()),
        mean=float(np.mean(data)),
        n=int(data.size),
    )


def group_box_summaries(c: ReputationVector, partition: GroupPartition) -> dict[str, BoxSummary]:
    """Box summary of the reputations of every populated group, by label."""
    return {
        partition.label(key): box_summary(values)
        for key, members in partition.groups.items()
        if (values := c.group_values(members)).size
    }


def marginal_disparity(
    c: ReputationVector,
    schema: AttributeSchema,
    profiles: UserProfiles,
    attrs: Sequence[str],
) -> dict[str, float]:
    """Largest |DR| over class pairs of every attribute, by attribute name.

    An attribute with fewer than two populated classes scores 0.
    """
    result: dict[str, float] = {}
    for name in schema.resolve(attrs):
        partition = build_partition(schema, profiles, [name])
        means = [
            float(np.mean(values))
            for members in partition.groups.values()
            if (values := c.group_values(members)).size
        ]
        result[name] = max(means) - min(means) if len(means) >= 2 else 0.0  # noqa: PLR2004
    return result
