"""Closed-form scalar formulas: optimal sample size, risk, final sample size."""

import math
from fractions import Fraction
from numbers import Real
from typing import Tuple, Union

from ..utils.errors import InvalidArgumentError

Number = Union[int, float, Fraction]


def _require_positive(name: str, value: Number) -> None:
    if isinstance(value, bool) or not isinstance(value, (Real, Fraction)):
        raise InvalidArgumentError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value) or value <= 0:
        raise InvalidArgumentError(f"{name} must be positive and finite, got {value!r}")


def optimal_sample_size(b: float, p: int, sigma2: float) -> float:
    """Sample size p*sigma2/b that bounds the risk by b when sigma2 is known.

    Not rounded to an integer.
    """
    _require_positive("b", b)
    _require_positive("p", p)
    _require_positive("sigma2", sigma2)
    return p * sigma2 / b


def theoretical_risk(n: float, p: int, sigma2: float) -> float:
    """Risk p*sigma2/n of the least-squares estimator at sample size n."""
    _require_positive("n", n)
    _require_positive("p", p)
    _require_positive("sigma2", sigma2)
    return p * sigma2 / n


def strict_floor(u: Number) -> int:
    """Largest integer strictly smaller than u, so strict_floor(10) == 9."""
    return math.ceil(u) - 1


def exact_rho(rho: float) -> Fraction:
    """The decimal value of rho as an exact fraction (0.8 -> 4/5)."""
    return Fraction(str(rho)) if isinstance(rho, float) else Fraction(rho)


def final_sample_size(sequential_n: int, rho: float) -> Tuple[float, int]:
    """Projected total N* = sequential_n / rho and final N = strict_floor(N*) + 1.

    N* is formed as an exact fraction so an integral projection maps to
    itself rather than picking up a rounding bump.
    """
    projected = Fraction(sequential_n) / exact_rho(rho)
    return float(projected), strict_floor(projected) + 1
