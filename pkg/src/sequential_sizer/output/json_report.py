"""JSON report output, the canonical serialization."""

import json

from .base import ReportFormatter
from .report import Report


class JsonReportFormatter(ReportFormatter):
    """Render reports as indented JSON objects."""

    def __init__(self, indent: int = 2):
        self.indent = indent

    def render(self, report: Report) -> str:
        return json.dumps(report.to_dict(), indent=self.indent, ensure_ascii=False) + "\n"

    def get_file_extension(self) -> str:
        return ".json"


def parse_report(text: str) -> Report:
    """Read a report back from its JSON form."""
    return Report.from_dict(json.loads(text))
