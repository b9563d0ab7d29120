"""Shared fixtures."""

import csv
from pathlib import Path
from typing import Iterable, Sequence, Tuple

import numpy as np
import pytest
from scipy import special

from sequential_sizer.core import ObservationBatch, ProcedureConfig, VarianceTracker

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def table_config() -> ProcedureConfig:
    """p = 4 design of the simulation tables at b = 0.4: m = 14, rho*p/b = 8."""
    return ProcedureConfig(rho=0.8, k=5, m0=2, p=4, b=0.4)


def random_batch(rng: np.random.Generator, n: int, p: int, sd: float = 1.0) -> ObservationBatch:
    """Intercept plus p - 1 standard normal predictors, y = X (1..p) + noise."""
    x = np.hstack([np.ones((n, 1)), rng.standard_normal((n, p - 1))])
    beta = np.arange(1, p + 1, dtype=float)
    return ObservationBatch(x, x @ beta + sd * rng.standard_normal(n))


class ConstantTracker(VarianceTracker):
    """Reports a fixed S^2 regardless of the data absorbed."""

    def __init__(self, s2: float):
        self.s2 = s2
        self.absorbed = 0

    def absorb(self, rows: ObservationBatch) -> None:
        self.absorbed += len(rows)

    def current_s2(self) -> float:
        return self.s2


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> Path:
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def eta_reference(k: int) -> Tuple[float, int]:
    """
    eta(k) summed with scipy's incomplete gamma, as an independent check.

    Returns the value and the number of terms evaluated, the dropped one
    included.
    """
    total = 0.0
    n = 0
    while True:
        n += 1
        nu = k * n
        # E[(X - 2 nu)^+] = nu SF(nu + 2, 2 nu) - 2 nu SF(nu, 2 nu)
        excess = nu * (special.gammaincc(nu / 2.0 + 1.0, nu) - 2.0 * special.gammaincc(nu / 2.0, nu))
        term = excess / n
        if abs(term) < 1e-15:
            return (k - 2) / 2.0 - total, n
        total += term
