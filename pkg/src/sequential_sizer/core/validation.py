"""Procedure configuration invariants."""

import logging
import math
from numbers import Integral, Real
from typing import Any, Optional

from .formulas import optimal_sample_size
from .models import ProcedureConfig
from ..utils.errors import InvalidConfigError

logger = logging.getLogger(__name__)


def _check_integer(field: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise InvalidConfigError(field, value, "must be an integer")
    if value < 1:
        raise InvalidConfigError(field, value, "must be at least 1")
    return int(value)


def _check_real(field: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise InvalidConfigError(field, value, "must be a real number")
    if not math.isfinite(value):
        raise InvalidConfigError(field, value, "must be finite")
    return float(value)


def validate_config(cfg: ProcedureConfig, sigma2_hint: Optional[float] = None) -> ProcedureConfig:
    """
    Check every procedure invariant and return the normalized config.

    Args:
        cfg: Raw configuration
        sigma2_hint: Optional guess of the error variance. When given, a
            warning is logged if the pilot alone already reaches the
            sequential target rho * n*, which leaves nothing for the
            sequential stage to do.

    Returns:
        ProcedureConfig with plain int/float fields

    Raises:
        InvalidConfigError: naming the first violated invariant
    """
    rho = _check_real("rho", cfg.rho)
    if not 0 < rho <= 1:
        raise InvalidConfigError("rho", cfg.rho, "must lie in (0, 1]")
    k = _check_integer("k", cfg.k)
    m0 = _check_integer("m0", cfg.m0)
    p = _check_integer("p", cfg.p)
    b = _check_real("b", cfg.b)
    if b <= 0:
        raise InvalidConfigError("b", cfg.b, "risk bound must be positive")

    validated = ProcedureConfig(rho=rho, k=k, m0=m0, p=p, b=b)

    if sigma2_hint is not None:
        target = rho * optimal_sample_size(b, p, sigma2_hint)
        if validated.m >= target:
            logger.warning(
                "Pilot size m=%d already reaches rho*n*=%.2f for sigma2=%g; "
                "the sequential stage will stop immediately",
                validated.m, target, sigma2_hint
            )
    return validated
