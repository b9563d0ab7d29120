"""Report serialization."""

from .base import ReportFormatter
from .csv_report import CsvReportFormatter
from .json_report import JsonReportFormatter, parse_report
from .report import Report

__all__ = [
    'Report',
    'ReportFormatter',
    'JsonReportFormatter',
    'CsvReportFormatter',
    'parse_report'
]
