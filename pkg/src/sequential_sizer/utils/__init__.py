"""Utility functions and helpers."""

from .errors import SequentialSizerError
from .logging import console, setup_logging

__all__ = ['SequentialSizerError', 'console', 'setup_logging']
