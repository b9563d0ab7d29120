"""CSV report output.

A lossy tabular projection: study reports become one row in the simulation
table layout, eta reports one row per k, and run reports the coefficient
table. Provenance and the config echo are dropped.
"""

import csv
import io
from typing import Any, List, Sequence

from ..simulation import ReplicationSummary
from .base import ReportFormatter
from .report import Report

ETA_COLUMNS = ('k', 'value', 'terms_used', 'overshoot')
RUN_COLUMNS = ('name', 'estimate', 'std_error')


class CsvReportFormatter(ReportFormatter):
    """Render the tabular part of a report as CSV with a header row."""

    def render(self, report: Report) -> str:
        if not self.validate_report(report):
            raise ValueError(f"cannot render report for command {report.command!r}")

        result = report.result
        if report.command == 'simulate':
            summary = ReplicationSummary.from_dict(result)
            return _write(ReplicationSummary.TABLE_COLUMNS, [summary.table_row()])
        if report.command == 'eta':
            return _write(ETA_COLUMNS, [[result.get(column) for column in ETA_COLUMNS]])
        rows = [[c[column] for column in RUN_COLUMNS] for c in result['coefficients']]
        return _write(RUN_COLUMNS, rows)

    def get_file_extension(self) -> str:
        return ".csv"


def _write(header: Sequence[str], rows: List[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(['' if value is None else value for value in row])
    return buffer.getvalue()
