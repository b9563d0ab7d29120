"""Report writing for the CLI."""

from pathlib import Path
from typing import Dict, Optional

from .output import CsvReportFormatter, JsonReportFormatter, Report, ReportFormatter
from .utils.errors import FileError

FORMATS: Dict[str, type] = {
    'json': JsonReportFormatter,
    'csv': CsvReportFormatter
}


class ReportWriter:
    """Write reports in the chosen format to a file or standard output."""

    def __init__(self, format: str = 'json'):
        if format not in FORMATS:
            raise ValueError(f"unknown report format {format!r}; choose from {sorted(FORMATS)}")
        self.format = format
        self.formatter: ReportFormatter = FORMATS[format]()

    def render(self, report: Report) -> str:
        return self.formatter.render(report)

    def write(self, report: Report, output_path: Optional[Path] = None) -> str:
        """
        Serialize a report.

        Args:
            report: Report to write
            output_path: Destination file; None returns the text for stdout

        Returns:
            The serialized text
        """
        text = self.render(report)
        if output_path is not None:
            output_path = Path(output_path)
            try:
                output_path.parent.mkdir(parents=True, exist_ok=True)
                output_path.write_text(text, encoding='utf-8')
            except OSError as e:
                raise FileError(output_path, e.strerror or str(e)) from e
        return text
