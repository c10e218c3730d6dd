"""One ranking method end to end: AA, or reputation with optional mitigation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from reprank.base import Dataset, InputError, RankingVector, ReputationVector
from reprank.engine import EngineConfig, EngineResult, arithmetic_average, compute
from reprank.independence import (
    MitigationResult,
    RecenteringOptions,
    multi_fair,
    sequential_fair,
    single_fair,
)

logger = logging.getLogger(__name__)


class MitigationKind(StrEnum):
    NONE = "none"
    SINGLE = "single"
    SEQUENTIAL = "sequential"
    MULTI = "multi"


class RankingMethod(StrEnum):
    AA = "aa"
    REPUTATION = "reputation"


class Mitigation(BaseModel):
    """Post-processing applied to engine reputations.

    Written as ``none``, ``single:<attr>``, ``sequential:<a,b,...>`` or
    ``multi:<a,b,...>``.
    """

    model_config = ConfigDict(frozen=True)

    kind: MitigationKind = MitigationKind.NONE
    attributes: tuple[str, ...] = ()
    min_group_size: int = Field(1, ge=1)
    options: RecenteringOptions = Field(default_factory=RecenteringOptions)

    @model_validator(mode="after")
    def validate_attribute_count(self) -> Mitigation:
        if self.kind == MitigationKind.NONE and self.attributes:
            raise ValueError("mitigation 'none' takes no attributes")
        if self.kind == MitigationKind.SINGLE and len(self.attributes) != 1:
            raise ValueError("mitigation 'single' takes exactly one attribute")
        if self.kind in (MitigationKind.SEQUENTIAL, MitigationKind.MULTI) and not self.attributes:
            raise ValueError(f"mitigation '{self.kind.value}' needs at least one attribute")
        return self

    @classmethod
    def parse(
        cls,
        text: str,
        min_group_size: int = 1,
        options: RecenteringOptions | None = None,
    ) -> Mitigation:
        """Parse ``kind[:attr,attr...]``; the attribute list may be bracketed.

        Raises:
            InputError: If the kind is unknown or the attribute count is wrong.
        """
        kind_text, _, attrs_text = text.strip().partition(":")
        try:
            kind = MitigationKind(kind_text.strip().lower())
        except ValueError:
            valid = ", ".join(k.value for k in MitigationKind)
            raise InputError(f"Unknown mitigation: {kind_text}. Valid choices: {valid}") from None
        attrs_text = attrs_text.strip()
        if attrs_text.startswith("[") and attrs_text.endswith("]"):
            attrs_text = attrs_text[1:-1]
        attributes = tuple(a.strip() for a in attrs_text.split(",") if a.strip())
        try:
            return cls(
                kind=kind,
                attributes=attributes,
                min_group_size=min_group_size,
                options=options or RecenteringOptions(),
            )
        except ValueError as e:
            raise InputError(f"Invalid mitigation {text!r}: {e}") from None

    @property
    def label(self) -> str:
        if self.kind == MitigationKind.NONE:
            return self.kind.value
        return f"{self.kind.value}:{','.join(self.attributes)}"


class MethodSpec(BaseModel):
    """A ranking method: the AA baseline or reputation with a mitigation.

    Labels: ``aa``, ``reputation``, ``reputation+single:<attr>``,
    ``reputation+sequential:<a,b>``, ``reputation+multi:<a,b>``.
    """

    model_config = ConfigDict(frozen=True)

    ranking: RankingMethod = RankingMethod.REPUTATION
    mitigation: Mitigation = Field(default_factory=Mitigation)

    @model_validator(mode="after")
    def validate_aa_is_plain(self) -> MethodSpec:
        if self.ranking == RankingMethod.AA and self.mitigation.kind != MitigationKind.NONE:
            raise ValueError("the AA baseline takes no mitigation")
        return self

    @classmethod
    def parse(
        cls,
        label: str,
        min_group_size: int = 1,
        options: RecenteringOptions | None = None,
    ) -> MethodSpec:
        """Parse a method label.

        Raises:
            InputError: If the label is not one of the known forms.
        """
        head, _, tail = label.strip().partition("+")
        try:
            ranking = RankingMethod(head.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in RankingMethod)
            raise InputError(f"Unknown ranking method: {head}. Valid choices: {valid}") from None
        if ranking == RankingMethod.AA and tail:
            raise InputError(f"The AA baseline takes no mitigation, got {label!r}")
        mitigation = (
            Mitigation.parse(tail, min_group_size, options)
            if tail
            else Mitigation(min_group_size=min_group_size, options=options or RecenteringOptions())
        )
        return cls(ranking=ranking, mitigation=mitigation)

    @property
    def label(self) -> str:
        if self.ranking == RankingMethod.AA or self.mitigation.kind == MitigationKind.NONE:
            return self.ranking.value
        return f"{self.ranking.value}+{self.mitigation.label}"


@dataclass(frozen=True)
class MethodResult:
    """Rankings of one method; reputation methods also keep the intermediate results."""

    method: MethodSpec
    rankings: RankingVector
    engine: EngineResult | None = None
    mitigation: MitigationResult | None = None

    @property
    def reputations(self) -> ReputationVector | None:
        if self.mitigation is not None:
            return self.mitigation.reputations
        return None if self.engine is None else self.engine.reputations


def apply_mitigation(
    dataset: Dataset, reputations: ReputationVector, mitigation: Mitigation
) -> MitigationResult | None:
    """Run the configured recentring on engine reputations; None for ``none``."""
    if mitigation.kind == MitigationKind.NONE:
        return None
    attrs = dataset.schema.resolve(mitigation.attributes)
    args = (dataset.ratings, reputations, dataset.schema, dataset.profiles)
    if mitigation.kind == MitigationKind.SINGLE:
        return single_fair(*args, attrs[0], mitigation.min_group_size, mitigation.options)
    if mitigation.kind == MitigationKind.SEQUENTIAL:
        return sequential_fair(*args, attrs, mitigation.min_group_size, mitigation.options)
    return multi_fair(*args, attrs, mitigation.min_group_size, mitigation.options)


def run_method(
    dataset: Dataset, cfg: EngineConfig | None = None, method: MethodSpec | None = None
) -> MethodResult:
    """Rank the items of ``dataset`` with ``method`` (plain reputation by default)."""
    method = method or MethodSpec()
    if method.ranking == RankingMethod.AA:
        return MethodResult(method=method, rankings=arithmetic_average(dataset.ratings))

    engine = compute(dataset.ratings, cfg)
    mitigation = apply_mitigation(dataset, engine.reputations, method.mitigation)
    rankings = engine.rankings if mitigation is None else mitigation.rankings
    logger.debug("Method %s ranked %d items", method.label, len(rankings))
    return MethodResult(method=method, rankings=rankings, engine=engine, mitigation=mitigation)
