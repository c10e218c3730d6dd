from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from reprank.base.errors import SchemaError
from reprank.base.ratings import RatingsMatrix


class Attribute(BaseModel):
    """A sensitive attribute and its ordered class labels."""

    model_config = ConfigDict(frozen=True)

    name: str
    classes: tuple[str, ...]

    @field_validator("classes")
    @classmethod
    def validate_classes(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if len(set(value)) != len(value):
            raise ValueError(f"class labels must be distinct, got {list(value)}")
        if not value:
            raise ValueError("an attribute needs at least one class")
        return value


class AttributeSchema(BaseModel):
    """Ordered set of sensitive attributes."""

    model_config = ConfigDict(frozen=True)

    attributes: tuple[Attribute, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def validate_unique_names(self) -> AttributeSchema:
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ValueError(f"attribute names must be unique, got {names}")
        return self

    @classmethod
    def from_mapping(cls, attributes: Mapping[str, Iterable[str]]) -> AttributeSchema:
        """Build a schema from ``{name: [class, ...]}`` preserving order."""
        return cls(
            attributes=tuple(
                Attribute(name=name, classes=tuple(classes)) for name, classes in attributes.items()
            )
        )

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.attributes]

    @property
    def k(self) -> int:
        return len(self.attributes)

    def attribute(self, name: str) -> Attribute:
        for attribute in self.attributes:
            if attribute.name == name:
                return attribute
        raise SchemaError(f"Unknown attribute: {name}. Valid attributes: {', '.join(self.names)}")

    def classes_of(self, name: str) -> tuple[str, ...]:
        return self.attribute(name).classes

    def resolve(self, names: Iterable[str]) -> list[str]:
        """Return ``names`` matched case-insensitively against the schema."""
        lookup = {n.lower(): n for n in self.names}
        resolved = []
        for name in names:
            key = name.strip().lower()
            if key not in lookup:
                valid = ", ".join(self.names)
                raise SchemaError(f"Unknown attribute: {name}. Valid attributes: {valid}")
            resolved.append(lookup[key])
        return resolved


class UserProfiles(BaseModel):
    """Class assignment of every user; ``None`` marks a missing value."""

    model_config = ConfigDict(frozen=True)

    assignment: dict[str, dict[str, str | None]] = Field(default_factory=dict)

    def class_of(self, user_id: str, attribute: str) -> str | None:
        return self.assignment.get(user_id, {}).get(attribute)

    def users(self) -> list[str]:
        return list(self.assignment)

    def validate_against(self, schema: AttributeSchema) -> None:
        """Raise SchemaError if a profile names an undeclared class."""
        declared = {a.name: set(a.classes) for a in schema.attributes}
        for user_id, classes in self.assignment.items():
            for attribute, label in classes.items():
                if attribute not in declared:
                    raise SchemaError(f"User {user_id} has unknown attribute {attribute!r}")
                if label is not None and label not in declared[attribute]:
                    raise SchemaError(
                        f"User {user_id} has undeclared class {label!r} for {attribute!r}"
                    )

    def count_missing(self, attribute: str) -> int:
        return sum(1 for classes in self.assignment.values() if classes.get(attribute) is None)

    def merged(self, other: UserProfiles) -> UserProfiles:
        """Return profiles with ``other`` added; ``other`` wins on conflicts."""
        return UserProfiles(assignment={**self.assignment, **other.assignment})


class GroupPartition(BaseModel):
    """Disjoint user groups keyed by tuples of class labels."""

    model_config = ConfigDict(frozen=True)

    key_attributes: tuple[str, ...]
    groups: dict[tuple[str, ...], frozenset[str]]
    min_group_size: int = 1
    excluded: frozenset[str] = frozenset()

    def __len__(self) -> int:
        return len(self.groups)

    def users(self) -> frozenset[str]:
        return frozenset().union(*self.groups.values()) if self.groups else frozenset()

    def label(self, key: tuple[str, ...]) -> str:
        return "/".join(key)

    def group_of(self, user_id: str) -> tuple[str, ...] | None:
        for key, members in self.groups.items():
            if user_id in members:
                return key
        return None


@dataclass(frozen=True)
class Dataset:
    """Ratings together with the demographic data of the raters."""

    name: str
    ratings: RatingsMatrix
    schema: AttributeSchema
    profiles: UserProfiles
