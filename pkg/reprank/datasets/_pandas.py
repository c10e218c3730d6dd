from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Any

from reprank.base import ParseError

if TYPE_CHECKING:
    import pandas as pd


def _check_pandas_installed() -> None:
    """Check if pandas is installed, raise ImportError with helpful message if not."""
    try:
        import pandas  # noqa: F401
    except ImportError as e:
        raise ImportError(
            "pandas is not installed. Install it with: pip install reprank[datasets]"
        ) from e


def read_table(path: Path | str, **kwargs: Any) -> pd.DataFrame:
    """Read a delimiter-separated file as strings, keeping "NA" and blanks literal.

    Raises:
        ParseError: If the file is missing or malformed.
    """
    _check_pandas_installed()
    import pandas as pd

    options: dict[str, Any] = {"dtype": str, "keep_default_na": False}
    options.update(kwargs)
    try:
        return pd.read_csv(path, **options)
    except FileNotFoundError as e:
        raise ParseError("file not found", path) from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ParseError(str(e).strip(), path) from e


def require_columns(frame: pd.DataFrame, columns: list[str], path: Path | str) -> None:
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise ParseError(
            f"missing columns {missing}; found {list(frame.columns)}", path, line=1
        )
