"""Custom exceptions.

Every exception keeps its constructor arguments in ``args`` so it can be
pickled across the worker pool used by simulation studies.
"""

from pathlib import Path
from typing import Any, Optional


class SequentialSizerError(Exception):
    """Base class for all errors raised by this package."""


class InvalidConfigError(SequentialSizerError, ValueError):
    """A procedure or schema setting violates its invariant."""

    def __init__(self, field: str, value: Any, reason: str):
        super().__init__(field, value, reason)
        self.field = field
        self.value = value
        self.reason = reason

    def __str__(self) -> str:
        return f"invalid {self.field}={self.value!r}: {self.reason}"


class InvalidArgumentError(SequentialSizerError, ValueError):
    """A numeric function received an argument outside its domain."""


class DimensionMismatchError(SequentialSizerError, ValueError):
    """Observation rows do not have the expected number of predictors."""

    def __init__(self, expected: int, got: int):
        super().__init__(expected, got)
        self.expected = expected
        self.got = got

    def __str__(self) -> str:
        return f"expected {self.expected} predictor values per row, got {self.got}"


class RankDeficientError(SequentialSizerError):
    """The cross-product matrix is singular to working tolerance."""


class InsufficientDataError(SequentialSizerError):
    """Fewer than p + 1 observations; S² is not defined yet."""

    def __init__(self, n: int, p: int):
        super().__init__(n, p)
        self.n = n
        self.p = p

    def __str__(self) -> str:
        return f"need at least {self.p + 1} observations for {self.p} parameters, have {self.n}"


class ExhaustedError(SequentialSizerError):
    """An observation source could not deliver the requested rows.

    ``rows`` holds the (possibly empty) batch the source still delivered.
    """

    def __init__(self, requested: int, available: int, rows: Any = None):
        super().__init__(requested, available, rows)
        self.requested = requested
        self.available = available
        self.rows = rows

    def __str__(self) -> str:
        return f"source exhausted: requested {self.requested} rows, {self.available} available"


class SourceExhaustedError(SequentialSizerError):
    """The procedure ran out of data before it could stop.

    The partial fit is attached so a report can still be produced; the risk
    bound is then not certified.
    """

    def __init__(self, obtained: int, needed: int, stage: str, fit: Any = None):
        super().__init__(obtained, needed, stage, fit)
        self.obtained = obtained
        self.needed = needed
        self.stage = stage
        self.fit = fit

    def __str__(self) -> str:
        return (f"source exhausted during {self.stage}: "
                f"obtained {self.obtained} of {self.needed} observations")


class RankDeficientPilotError(SourceExhaustedError):
    """S² never became defined before the source ran dry."""

    def __str__(self) -> str:
        return (f"design never reached full rank: source exhausted after "
                f"{self.obtained} observations (needed {self.needed})")


class IngestError(SequentialSizerError):
    """Base class for file ingestion problems."""


class FileError(IngestError):
    """The data file could not be opened or read."""

    def __init__(self, path: Path, reason: str):
        super().__init__(path, reason)
        self.path = path
        self.reason = reason

    def __str__(self) -> str:
        return f"cannot read {self.path}: {self.reason}"


class SchemaMismatchError(IngestError):
    """A column named by the schema is missing from the file header."""

    def __init__(self, column: str, path: Optional[Path] = None):
        super().__init__(column, path)
        self.column = column
        self.path = path

    def __str__(self) -> str:
        where = f" in {self.path}" if self.path else ""
        return f"column {self.column!r} not found{where}"


class ParseError(IngestError):
    """A field could not be read as a finite decimal number."""

    def __init__(self, row: int, column: str, token: str):
        super().__init__(row, column, token)
        self.row = row
        self.column = column
        self.token = token

    def __str__(self) -> str:
        return f"row {self.row}, column {self.column!r}: cannot parse {self.token!r}"


class InvalidValueError(IngestError, ValueError):
    """A value is outside a transform's domain."""

    def __init__(self, value: Any, row: Optional[int] = None, column: Optional[str] = None):
        super().__init__(value, row, column)
        self.value = value
        self.row = row
        self.column = column

    def __str__(self) -> str:
        if self.row is None:
            return f"value {self.value!r} outside the transform domain"
        return f"row {self.row}, column {self.column!r}: value {self.value!r} outside the transform domain"


class StudyError(SequentialSizerError):
    """A Monte Carlo replication failed."""

    def __init__(self, index: int, reason: str):
        super().__init__(index, reason)
        self.index = index
        self.reason = reason

    def __str__(self) -> str:
        return f"replication {self.index} failed: {self.reason}"
