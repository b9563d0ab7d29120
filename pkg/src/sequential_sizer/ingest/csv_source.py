"""CSV-backed observation source.

Rows are delivered in file order, which stands in for collection order.
"""

import csv
import logging
import math
from pathlib import Path
from typing import List, Optional

import numpy as np

from ..core.interfaces import ObservationSource
from ..core.models import ObservationBatch
from ..utils.errors import (
    ExhaustedError,
    FileError,
    InvalidConfigError,
    InvalidValueError,
    ParseError,
    SchemaMismatchError,
)
from .schema import DataSchema, validate_schema
from .transforms import Transform, apply_transform

logger = logging.getLogger(__name__)


class CsvObservationSource(ObservationSource):
    """Streams observations from a comma-separated file with a header row."""

    def __init__(self, path: Path, schema: DataSchema):
        self.path = Path(path)
        self.schema = schema
        self.delivered = 0
        self._closed = False

        try:
            self._handle = self.path.open(newline='', encoding='utf-8')
        except OSError as e:
            raise FileError(self.path, e.strerror or str(e)) from e

        self._reader = csv.reader(self._handle)
        try:
            header = next(self._reader)
        except StopIteration:
            self.close()
            raise FileError(self.path, "file is empty (a header row is required)")
        except (csv.Error, UnicodeDecodeError) as e:
            self.close()
            raise FileError(self.path, str(e)) from e

        index = {name.strip(): i for i, name in enumerate(header)}
        self._indices = []
        for column in schema.columns:
            if column not in index:
                self.close()
                raise SchemaMismatchError(column, self.path)
            self._indices.append(index[column])
        self._transforms = [schema.transform_for(column) for column in schema.columns]

    @property
    def p(self) -> int:
        return self.schema.p

    def draw(self, count: int) -> ObservationBatch:
        """Read the next count data rows; raises ExhaustedError at end of file."""
        ys: List[float] = []
        xs: List[List[float]] = []
        while len(ys) < count:
            record = self._next_record()
            if record is None:
                self.close()
                raise ExhaustedError(count, len(ys), self._batch(xs, ys))
            values = self._parse(record)
            ys.append(values[0])
            xs.append(([1.0] if self.schema.intercept else []) + values[1:])
        self.delivered += len(ys)
        return self._batch(xs, ys)

    def _next_record(self) -> Optional[List[str]]:
        if self._closed:
            return None
        try:
            for record in self._reader:
                if record:
                    return record
        except (csv.Error, UnicodeDecodeError) as e:
            raise FileError(self.path, f"line {self._reader.line_num}: {e}") from e
        return None

    def _parse(self, record: List[str]) -> List[float]:
        line = self._reader.line_num
        values = []
        for column, i, transform in zip(self.schema.columns, self._indices, self._transforms):
            token = record[i].strip() if i < len(record) else ''
            try:
                value = float(token)
            except ValueError:
                raise ParseError(line, column, token) from None
            if not math.isfinite(value):
                raise ParseError(line, column, token)
            if transform is not Transform.IDENTITY:
                try:
                    value = apply_transform(transform, value)
                except InvalidValueError:
                    raise InvalidValueError(value, line, column) from None
            values.append(value)
        return values

    def _batch(self, xs: List[List[float]], ys: List[float]) -> ObservationBatch:
        if not ys:
            return ObservationBatch.empty(self.p)
        return ObservationBatch(np.array(xs, dtype=float), np.array(ys, dtype=float))

    def close(self) -> None:
        if not self._closed:
            self._handle.close()
            self._closed = True

    def __enter__(self) -> 'CsvObservationSource':
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.close()


def open_csv_source(path: Path, schema: DataSchema) -> CsvObservationSource:
    """
    Open a CSV file as an observation source.

    Raises:
        InvalidConfigError: schema fails validation
        FileError, SchemaMismatchError: file unreadable or missing a column
    """
    validation = validate_schema(schema)
    if not validation.is_valid:
        raise InvalidConfigError("schema", schema.to_dict(), validation.error)
    for warning in validation.warnings:
        logger.warning(warning)
    return CsvObservationSource(path, schema)
