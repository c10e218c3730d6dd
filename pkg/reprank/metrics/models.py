from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class LTResult:
    """Outcome of a two-sample location test."""

    statistic: float
    degrees_of_freedom: float
    p_value: float
    reject: bool
    alpha: float
    equal_var: bool = False

    @property
    def variant(self) -> str:
        return "pooled" if self.equal_var else "welch"


@dataclass(frozen=True)
class DRCell:
    """Disparate reputation between two groups; ``test`` is None when a group has one member."""

    delta: float
    test: LTResult | None = None

    @property
    def reject(self) -> bool:
        return self.test is not None and self.test.reject

    @property
    def p_value(self) -> float | None:
        return None if self.test is None else self.test.p_value


@dataclass(frozen=True)
class DRMatrix:
    """Upper triangle of pairwise disparate reputations.

    ``classes`` lists group labels in declared class order; ``cells`` maps
    ``(a, b)`` with ``a`` before ``b`` in that order.
    """

    attributes: tuple[str, ...]
    classes: tuple[str, ...]
    means: dict[str, float]
    sizes: dict[str, int]
    cells: dict[tuple[str, str], DRCell] = field(default_factory=dict)
    alpha: float = 0.05

    def delta(self, a: str, b: str) -> float:
        """Signed disparity; ``delta(b, a) == -delta(a, b)``."""
        if a == b:
            return 0.0
        if (a, b) in self.cells:
            return self.cells[(a, b)].delta
        return -self.cells[(b, a)].delta

    def max_abs_delta(self) -> float:
        return max((abs(cell.delta) for cell in self.cells.values()), default=0.0)

    def rejections(self) -> list[tuple[str, str]]:
        return [pair for pair, cell in self.cells.items() if cell.reject]


@dataclass(frozen=True)
class BoxSummary:
    """Five-number summary plus mean and count of a sample."""

    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float
    n: int
