"""Core data models for the sequential procedure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.errors import DimensionMismatchError, InvalidArgumentError

if TYPE_CHECKING:
    from .regression import RegressionFit


@dataclass(frozen=True)
class ProcedureConfig:
    """Tuning knobs of the procedure: proportion, step size, pilot steps, parameters, risk bound."""
    rho: float
    k: int
    m0: int
    p: int
    b: float

    @property
    def m(self) -> int:
        """Pilot sample size m0*k + p."""
        return self.m0 * self.k + self.p

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            'rho': self.rho,
            'k': self.k,
            'm0': self.m0,
            'p': self.p,
            'b': self.b,
            'm': self.m
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ProcedureConfig':
        return cls(rho=data['rho'], k=data['k'], m0=data['m0'], p=data['p'], b=data['b'])


@dataclass(frozen=True)
class Observation:
    """One response with its predictor row (leading 1 when an intercept is modeled)."""
    y: float
    x: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'x', tuple(float(v) for v in self.x))
        object.__setattr__(self, 'y', float(self.y))
        if not np.isfinite(self.y) or not all(np.isfinite(v) for v in self.x):
            raise InvalidArgumentError(f"observation values must be finite: y={self.y}, x={self.x}")

    @property
    def p(self) -> int:
        return len(self.x)


class ObservationBatch:
    """A block of observations stored column-wise.

    Sources hand rows to the engine in batches; keeping them as arrays lets
    the cross-product updates run in numpy instead of per row.
    """

    __slots__ = ('x', 'y')

    def __init__(self, x: np.ndarray, y: np.ndarray):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float).reshape(-1)
        if x.ndim != 2:
            raise InvalidArgumentError(f"predictor block must be 2-dimensional, got shape {x.shape}")
        if x.shape[0] != y.shape[0]:
            raise InvalidArgumentError(
                f"{x.shape[0]} predictor rows but {y.shape[0]} responses"
            )
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise InvalidArgumentError("observation values must be finite")
        self.x = x
        self.y = y

    @property
    def p(self) -> int:
        return self.x.shape[1]

    def __len__(self) -> int:
        return self.y.shape[0]

    def __iter__(self) -> Iterator[Observation]:
        for i in range(len(self)):
            yield Observation(y=self.y[i], x=tuple(self.x[i]))

    def __getitem__(self, item: slice) -> 'ObservationBatch':
        return ObservationBatch(self.x[item], self.y[item])

    @classmethod
    def empty(cls, p: int) -> 'ObservationBatch':
        return cls(np.empty((0, p)), np.empty(0))

    @classmethod
    def from_observations(cls, rows: Sequence[Observation], p: int) -> 'ObservationBatch':
        """Stack observation rows, checking that each carries p predictors."""
        if isinstance(rows, ObservationBatch):
            if rows.p != p:
                raise DimensionMismatchError(p, rows.p)
            return rows
        rows = list(rows)
        for row in rows:
            if len(row.x) != p:
                raise DimensionMismatchError(p, len(row.x))
        if not rows:
            return cls.empty(p)
        return cls(np.array([row.x for row in rows], dtype=float),
                   np.array([row.y for row in rows], dtype=float))

    @classmethod
    def concat(cls, batches: Sequence['ObservationBatch'], p: int) -> 'ObservationBatch':
        batches = [b for b in batches if len(b)]
        if not batches:
            return cls.empty(p)
        return cls(np.vstack([b.x for b in batches]), np.concatenate([b.y for b in batches]))


@dataclass(frozen=True)
class TraceEntry:
    """One evaluation of the stopping inequality."""
    step: int
    sample_size: int
    s2: float
    threshold: float

    @property
    def satisfied(self) -> bool:
        return self.sample_size >= self.threshold

    def to_dict(self) -> Dict[str, Any]:
        return {
            'step': self.step,
            'sample_size': self.sample_size,
            's2': self.s2,
            'threshold': self.threshold
        }


@dataclass(frozen=True)
class StoppingResult:
    """Outcome of one run: steps taken, projected and final sample sizes, final fit."""
    t_steps: int
    sequential_n: int
    n_projected: float
    n_final: int
    fit: 'RegressionFit'

    @property
    def top_up(self) -> int:
        """Rows drawn in the final batch."""
        return self.n_final - self.sequential_n

    def to_dict(self, names: Optional[List[str]] = None) -> Dict[str, Any]:
        """Convert to dictionary, including the coefficient table of the final fit."""
        solution = self.fit.solution
        names = names or [f"beta_{j}" for j in range(self.fit.p)]
        return {
            't_steps': self.t_steps,
            'sequential_n': self.sequential_n,
            'n_projected': self.n_projected,
            'n_final': self.n_final,
            's2': solution.s2,
            'coefficients': [
                {'name': name, 'estimate': float(est), 'std_error': float(se)}
                for name, est, se in zip(names, solution.beta_hat, self.fit.standard_errors())
            ],
            'r_squared': self.fit.r_squared(),
            'adjusted_r_squared': self.fit.adjusted_r_squared()
        }


@dataclass(frozen=True)
class EtaValue:
    """The second-order constant for a given step size, with series bookkeeping."""
    k: int
    value: float
    terms_used: int
    truncation_threshold: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            'value': self.value,
            'terms_used': self.terms_used,
            'truncation_threshold': self.truncation_threshold
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EtaValue':
        return cls(k=data['k'], value=data['value'], terms_used=data['terms_used'],
                   truncation_threshold=data['truncation_threshold'])


@dataclass
class ValidationResult:
    """Result of validating a schema or configuration before use."""
    is_valid: bool
    error: Optional[str] = None
    warnings: List[str] = field(default_factory=list)
