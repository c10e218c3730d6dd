"""Core data model: ratings, attributes, partitions and score vectors."""

from reprank.base.base import ExecutorType, TaskResult, run_ordered
from reprank.base.errors import (
    ContractViolationError,
    ExperimentError,
    InputError,
    ParseError,
    RangeViolationError,
    ReprankError,
    SchemaError,
)
from reprank.base.models import (
    Attribute,
    AttributeSchema,
    Dataset,
    GroupPartition,
    UserProfiles,
)
from reprank.base.partition import build_partition
from reprank.base.ratings import RatingEntry, RatingsMatrix
from reprank.base.vectors import RankingVector, ReputationVector

__all__ = [
    # Parallel execution
    "ExecutorType",
    "TaskResult",
    "run_ordered",
    # Errors
    "ReprankError",
    "SchemaError",
    "InputError",
    "ContractViolationError",
    "RangeViolationError",
    "ParseError",
    "ExperimentError",
    # Models
    "Attribute",
    "AttributeSchema",
    "Dataset",
    "GroupPartition",
    "UserProfiles",
    "RatingEntry",
    "RatingsMatrix",
    "RankingVector",
    "ReputationVector",
    # Operations
    "build_partition",
]
