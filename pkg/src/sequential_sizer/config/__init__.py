"""Configuration defaults, settings merging and file loading."""

from .settings import resolve_procedure_config
from .loader import load_config_file, RunConfig

__all__ = [
    'resolve_procedure_config',
    'load_config_file',
    'RunConfig'
]
