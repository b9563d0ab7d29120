"""Column transforms applied while reading data."""

import math
from enum import Enum
from typing import Callable, Dict

from ..utils.errors import InvalidValueError


class Transform(Enum):
    """Per-column transform."""
    IDENTITY = "identity"
    SHIFTED_LOG = "shifted_log"


def shifted_log(v: float) -> float:
    """ln(v + 1) for nonnegative, skewed variables such as counts and prices."""
    if not math.isfinite(v) or v < 0:
        raise InvalidValueError(v)
    return math.log1p(v)


def identity(v: float) -> float:
    return v


TRANSFORMS: Dict[Transform, Callable[[float], float]] = {
    Transform.IDENTITY: identity,
    Transform.SHIFTED_LOG: shifted_log,
}


def apply_transform(transform: Transform, v: float) -> float:
    return TRANSFORMS[transform](v)
