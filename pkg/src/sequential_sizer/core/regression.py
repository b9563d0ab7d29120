"""Incremental ordinary least squares over streaming observation batches."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from ..config.defaults import RANK_TOLERANCE
from ..utils.errors import DimensionMismatchError, InsufficientDataError, RankDeficientError
from .models import Observation, ObservationBatch

logger = logging.getLogger(__name__)

Rows = Union[ObservationBatch, Sequence[Observation]]


@dataclass(frozen=True)
class FitSolution:
    """Solved normal equations."""
    beta_hat: np.ndarray
    s2: float
    rss: float
    clamped: bool
    scale: np.ndarray
    factor: Tuple[np.ndarray, bool]

    def unscaled_covariance(self) -> np.ndarray:
        """(X'X)^-1 recovered from the equilibrated factorization."""
        p = self.beta_hat.shape[0]
        inner = cho_solve(self.factor, np.eye(p))
        return inner / np.outer(self.scale, self.scale)


@dataclass(frozen=True, eq=False)
class RegressionFit:
    """
    Running sufficient statistics of least squares.

    Accumulators are plain sums, so fits over disjoint data merge by
    addition in any order. The solution is computed on first access and
    cached on the (immutable) instance.
    """
    n: int
    p: int
    xtx: np.ndarray
    xty: np.ndarray
    yty: float
    ysum: float

    @cached_property
    def solution(self) -> FitSolution:
        if self.n <= self.p:
            raise InsufficientDataError(self.n, self.p)

        scale = np.sqrt(np.diag(self.xtx))
        if np.any(scale == 0):
            raise RankDeficientError("a predictor column is identically zero")
        # Equilibrate so the pivot test measures rank, not column units.
        scaled = self.xtx / np.outer(scale, scale)
        try:
            factor = cho_factor(scaled, lower=True, check_finite=False)
        except LinAlgError as e:
            raise RankDeficientError(f"cross-product matrix is not positive definite: {e}") from e

        pivots = np.diag(factor[0]) ** 2
        ratio = pivots.min() / pivots.max()
        if not ratio >= RANK_TOLERANCE:
            raise RankDeficientError(f"pivot ratio {ratio:.3e} below {RANK_TOLERANCE:.0e}")

        beta_hat = cho_solve(factor, self.xty / scale, check_finite=False) / scale
        rss = self.yty - float(beta_hat @ self.xty)
        clamped = rss < 0
        if clamped:
            logger.debug("Residual sum of squares %.3e clamped to 0", rss)
            rss = 0.0
        return FitSolution(
            beta_hat=beta_hat,
            s2=rss / (self.n - self.p),
            rss=rss,
            clamped=clamped,
            scale=scale,
            factor=factor
        )

    @property
    def solvable(self) -> bool:
        try:
            self.solution
        except (InsufficientDataError, RankDeficientError):
            return False
        return True

    def standard_errors(self) -> np.ndarray:
        """sqrt of the diagonal of S^2 (X'X)^-1, for reporting."""
        solution = self.solution
        return np.sqrt(solution.s2 * np.diag(solution.unscaled_covariance()))

    def r_squared(self) -> Optional[float]:
        """Centered coefficient of determination (meaningful for intercept models)."""
        tss = self.yty - self.ysum ** 2 / self.n
        if tss <= 0:
            return None
        return 1.0 - self.solution.rss / tss

    def adjusted_r_squared(self) -> Optional[float]:
        r2 = self.r_squared()
        if r2 is None or self.n - self.p < 1:
            return None
        return 1.0 - (1.0 - r2) * (self.n - 1) / (self.n - self.p)


def _accumulate(batch: ObservationBatch) -> Tuple[np.ndarray, np.ndarray, float, float]:
    x, y = batch.x, batch.y
    return x.T @ x, x.T @ y, float(y @ y), float(y.sum())


def fit_init(rows: Rows, p: int) -> RegressionFit:
    """
    Build the accumulators for a set of rows; no solve is attempted.

    Raises:
        DimensionMismatchError: if a row does not carry p predictor values
    """
    batch = ObservationBatch.from_observations(rows, p)
    xtx, xty, yty, ysum = _accumulate(batch)
    return RegressionFit(n=len(batch), p=p, xtx=xtx, xty=xty, yty=yty, ysum=ysum)


def fit_update(fit: RegressionFit, rows: Rows) -> RegressionFit:
    """Return the fit over the old data followed by rows."""
    batch = ObservationBatch.from_observations(rows, fit.p)
    if not len(batch):
        return fit
    xtx, xty, yty, ysum = _accumulate(batch)
    return RegressionFit(
        n=fit.n + len(batch),
        p=fit.p,
        xtx=fit.xtx + xtx,
        xty=fit.xty + xty,
        yty=fit.yty + yty,
        ysum=fit.ysum + ysum
    )


def fit_merge(a: RegressionFit, b: RegressionFit) -> RegressionFit:
    """Fit over the union of two disjoint data sets."""
    if a.p != b.p:
        raise DimensionMismatchError(a.p, b.p)
    return RegressionFit(
        n=a.n + b.n,
        p=a.p,
        xtx=a.xtx + b.xtx,
        xty=a.xty + b.xty,
        yty=a.yty + b.yty,
        ysum=a.ysum + b.ysum
    )


def fit_solve(fit: RegressionFit) -> Tuple[np.ndarray, float]:
    """
    Least-squares estimate and unbiased variance estimate.

    Raises:
        InsufficientDataError: n <= p
        RankDeficientError: X'X singular to working tolerance
    """
    solution = fit.solution
    return solution.beta_hat.copy(), solution.s2


def _margin(beta_true: Sequence[float], fit: RegressionFit) -> np.ndarray:
    beta_true = np.asarray(beta_true, dtype=float)
    if beta_true.shape != (fit.p,):
        raise DimensionMismatchError(fit.p, beta_true.size)
    return fit.solution.beta_hat - beta_true


def loss_value(beta_true: Sequence[float], fit: RegressionFit) -> float:
    """
    Loss n^-1 (b_hat - b)' X'X (b_hat - b).

    Weighted by the cross-product matrix, which makes its expectation
    p*sigma2/n.
    """
    d = _margin(beta_true, fit)
    return max(float(d @ fit.xtx @ d) / fit.n, 0.0)


def loss_value_inverse_weighted(beta_true: Sequence[float], fit: RegressionFit) -> float:
    """Same margin weighted by (X'X)^-1; kept for comparison only."""
    d = _margin(beta_true, fit)
    inverse = fit.solution.unscaled_covariance()
    return max(float(d @ inverse @ d) / fit.n, 0.0)
