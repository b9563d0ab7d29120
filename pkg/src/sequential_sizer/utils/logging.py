"""Logging setup shared by the CLI."""

import logging

from rich.console import Console
from rich.logging import RichHandler

# Diagnostics go to stderr; stdout is reserved for reports.
console = Console(stderr=True)


def setup_logging(verbose: bool = False) -> None:
    """Route package log records through a rich handler on stderr."""
    level = logging.DEBUG if verbose else logging.WARNING
    handler = RichHandler(console=console, show_path=False, rich_tracebacks=True)
    handler.setFormatter(logging.Formatter("%(message)s"))

    logger = logging.getLogger("sequential_sizer")
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.setLevel(level)
