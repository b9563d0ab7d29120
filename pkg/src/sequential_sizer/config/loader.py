"""Config file loading."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ..ingest.schema import DataSchema
from ..utils.errors import FileError, InvalidConfigError
from .settings import PROCEDURE_KEYS


@dataclass
class RunConfig:
    """Settings read from a YAML file for a real-data run."""
    schema: Optional[DataSchema] = None
    procedure: Dict[str, Any] = field(default_factory=dict)


def load_config_file(path: Path) -> RunConfig:
    """
    Load a YAML file with optional ``schema:`` and ``procedure:`` sections.

    Example::

        schema:
          response: sales
          predictors: [price, reviews]
          dummies: [seller]
          log_columns: [sales, price, reviews]
        procedure:
          b: 0.01
          k: 2
          m0: 10
          rho: 0.5
    """
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise FileError(path, e.strerror or str(e)) from e

    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as e:
        raise InvalidConfigError("config", str(path), f"not valid YAML: {e}") from e
    if not isinstance(data, dict):
        raise InvalidConfigError("config", str(path), "top level must be a mapping")

    unknown = set(data) - {'schema', 'procedure'}
    if unknown:
        name = sorted(unknown)[0]
        raise InvalidConfigError(name, data[name], "unknown config section")

    procedure = data.get('procedure') or {}
    if not isinstance(procedure, dict):
        raise InvalidConfigError("procedure", procedure, "must be a mapping")
    for key in procedure:
        if key not in PROCEDURE_KEYS:
            raise InvalidConfigError(f"procedure.{key}", procedure[key], "unknown procedure setting")

    schema = data.get('schema')
    if schema is not None and not isinstance(schema, dict):
        raise InvalidConfigError("schema", schema, "must be a mapping")

    return RunConfig(
        schema=DataSchema.from_dict(schema) if schema is not None else None,
        procedure=dict(procedure)
    )
