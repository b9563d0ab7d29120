"""Procedure settings merging."""

from typing import Any, Dict, Mapping, Optional

from ..core.models import ProcedureConfig
from ..core.validation import validate_config
from ..utils.errors import InvalidConfigError

PROCEDURE_KEYS = ('rho', 'k', 'm0', 'b')


def resolve_procedure_config(p: int, *layers: Optional[Mapping[str, Any]]) -> ProcedureConfig:
    """
    Merge procedure settings from several layers and validate the result.

    Later layers win; keys whose value is None are skipped, so CLI flags that
    were not given leave file or default values in place.
    """
    merged: Dict[str, Any] = {}
    for layer in layers:
        if not layer:
            continue
        for key, value in layer.items():
            if key not in PROCEDURE_KEYS:
                raise InvalidConfigError(key, value, "unknown procedure setting")
            if value is not None:
                merged[key] = value
    missing = [key for key in PROCEDURE_KEYS if key not in merged]
    if missing:
        raise InvalidConfigError(missing[0], None, "no value supplied")
    return validate_config(ProcedureConfig(p=p, **merged))
