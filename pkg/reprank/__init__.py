from reprank.base import (
    AttributeSchema,
    ContractViolationError,
    Dataset,
    ExperimentError,
    GroupPartition,
    InputError,
    ParseError,
    RangeViolationError,
    RankingVector,
    RatingsMatrix,
    ReprankError,
    ReputationVector,
    SchemaError,
    UserProfiles,
    build_partition,
)
from reprank.dataset_factory import DatasetType, load_dataset
from reprank.engine import EngineConfig, arithmetic_average, compute
from reprank.independence import RecenteringOptions, multi_fair, sequential_fair, single_fair
from reprank.metrics import disparate_reputation, dr_matrix, kendall_tau, location_test, rmse
from reprank.pipeline import MethodSpec, Mitigation, run_method

__all__ = [
    # Core model
    "AttributeSchema",
    "Dataset",
    "GroupPartition",
    "RankingVector",
    "RatingsMatrix",
    "ReputationVector",
    "UserProfiles",
    "build_partition",
    # Errors
    "ReprankError",
    "SchemaError",
    "InputError",
    "ContractViolationError",
    "RangeViolationError",
    "ParseError",
    "ExperimentError",
    # Engine and mitigation
    "EngineConfig",
    "compute",
    "arithmetic_average",
    "RecenteringOptions",
    "single_fair",
    "multi_fair",
    "sequential_fair",
    # Metrics
    "disparate_reputation",
    "dr_matrix",
    "kendall_tau",
    "location_test",
    "rmse",
    # Methods and datasets
    "MethodSpec",
    "Mitigation",
    "run_method",
    "DatasetType",
    "load_dataset",
    # Lazily loaded parsers
    "demo_dataset",
    "parse_movielens",
    "parse_bookcrossing",
    "parse_inline",
    "ContinentTable",
]

# Parsers load on first access
_LAZY_IMPORTS = {
    "demo_dataset": "reprank.datasets.inline",
    "parse_inline": "reprank.datasets.inline",
    "parse_movielens": "reprank.datasets.movielens",
    "parse_bookcrossing": "reprank.datasets.bookcrossing",
    "ContinentTable": "reprank.datasets.continents",
}


def __getattr__(name: str):
    if name in _LAZY_IMPORTS:
        import importlib

        module = importlib.import_module(_LAZY_IMPORTS[name])
        return getattr(module, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
