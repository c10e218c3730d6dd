"""Exception hierarchy for reprank.

Every error derives from ``ValueError`` so callers that already guard
bad input with ``except ValueError`` keep working.
"""

from __future__ import annotations

from pathlib import Path


class ReprankError(ValueError):
    """Base class for all reprank errors."""


class SchemaError(ReprankError):
    """Unknown attribute or class, or an inconsistent attribute schema."""


class InputError(ReprankError):
    """Input data that an operation cannot work with (empty, too small, out of range)."""


class ContractViolationError(ReprankError):
    """A precondition of an update step does not hold."""


class RangeViolationError(ReprankError):
    """Recentred reputations left the ]0,1] interval."""


class ParseError(ReprankError):
    """A dataset file could not be parsed."""

    def __init__(self, message: str, path: Path | str | None = None, line: int | None = None):
        self.path = Path(path) if path is not None else None
        self.line = line
        location = ""
        if self.path is not None:
            location = f"{self.path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        super().__init__(f"{location}{message}")


class ExperimentError(ReprankError):
    """An error raised inside one stage of an experiment run."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")
