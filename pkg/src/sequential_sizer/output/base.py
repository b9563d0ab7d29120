"""Base interfaces for report formatting."""

from abc import ABC, abstractmethod

from .report import Report


class ReportFormatter(ABC):
    """Abstract interface for report formatters."""

    @abstractmethod
    def render(self, report: Report) -> str:
        """
        Serialize a report.

        Args:
            report: Report to serialize

        Returns:
            Text ready to write to a file or standard output
        """
        pass

    @abstractmethod
    def get_file_extension(self) -> str:
        """Get the file extension for this format."""
        pass

    def validate_report(self, report: Report) -> bool:
        """Check that the report carries a payload this formatter can render."""
        return (
            report is not None
            and report.command in Report.COMMANDS
            and isinstance(report.result, dict)
        )
