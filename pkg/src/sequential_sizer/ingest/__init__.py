"""Data ingestion: schemas, transforms and file-backed sources."""

from .array_source import ArraySource
from .csv_source import CsvObservationSource, open_csv_source
from .interleave import InterleavedSource, interleave_sources
from .schema import DataSchema, validate_schema
from .transforms import Transform, shifted_log

__all__ = [
    'ArraySource',
    'CsvObservationSource',
    'open_csv_source',
    'InterleavedSource',
    'interleave_sources',
    'DataSchema',
    'validate_schema',
    'Transform',
    'shifted_log'
]
