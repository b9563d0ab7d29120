"""Monte Carlo replication of the procedure under a normal linear model."""

import logging
import math
from concurrent.futures import FIRST_EXCEPTION, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Any, Dict, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from rich.progress import Progress, TaskID

from .config.defaults import (
    DEFAULT_B,
    DEFAULT_BETA,
    DEFAULT_ERROR_SD,
    DEFAULT_K,
    DEFAULT_M0,
    DEFAULT_PREDICTORS,
    DEFAULT_REPLICATIONS,
    DEFAULT_RHO,
    DEFAULT_SEED,
    DEFAULT_TAIL_GAMMA,
)
from .core.chi_square import projected_overshoot
from .core.engine import run_procedure
from .core.formulas import optimal_sample_size, theoretical_risk
from .core.interfaces import ObservationSource
from .core.models import ObservationBatch, ProcedureConfig
from .core.regression import loss_value
from .core.validation import validate_config
from .utils.errors import InvalidConfigError, StudyError

logger = logging.getLogger(__name__)

MAX_SEED = 2 ** 64


def _default_config() -> ProcedureConfig:
    return ProcedureConfig(rho=DEFAULT_RHO, k=DEFAULT_K, m0=DEFAULT_M0,
                           p=len(DEFAULT_BETA), b=DEFAULT_B)


@dataclass(frozen=True)
class SimulationDesign:
    """Generative model and procedure settings for a study."""
    beta_true: Tuple[float, ...] = DEFAULT_BETA
    predictor_specs: Tuple[Tuple[float, float], ...] = DEFAULT_PREDICTORS  # (mean, variance)
    error_sd: float = DEFAULT_ERROR_SD
    cfg: ProcedureConfig = field(default_factory=_default_config)
    replications: int = DEFAULT_REPLICATIONS
    seed: int = DEFAULT_SEED
    intercept: bool = True
    tail_gamma: float = DEFAULT_TAIL_GAMMA

    def __post_init__(self):
        object.__setattr__(self, 'beta_true', tuple(float(b) for b in self.beta_true))
        object.__setattr__(self, 'predictor_specs',
                           tuple((float(m), float(v)) for m, v in self.predictor_specs))
        object.__setattr__(self, 'cfg', validate_config(self.cfg))

        p = int(self.intercept) + len(self.predictor_specs)
        if len(self.beta_true) != p:
            raise InvalidConfigError("beta_true", self.beta_true,
                                     f"needs {p} coefficients for {len(self.predictor_specs)} predictors")
        if self.cfg.p != p:
            raise InvalidConfigError("p", self.cfg.p, f"design has {p} parameters")
        for mean, variance in self.predictor_specs:
            if not (math.isfinite(mean) and math.isfinite(variance)) or variance <= 0:
                raise InvalidConfigError("predictor_specs", (mean, variance),
                                         "need a finite mean and a positive variance")
        if not math.isfinite(self.error_sd) or self.error_sd < 0:
            raise InvalidConfigError("error_sd", self.error_sd, "must be nonnegative")
        if isinstance(self.replications, bool) or not isinstance(self.replications, int) \
                or self.replications < 1:
            raise InvalidConfigError("replications", self.replications, "must be a positive integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < MAX_SEED:
            raise InvalidConfigError("seed", self.seed, "must be an unsigned 64-bit integer")
        if not 0 < self.tail_gamma < 1:
            raise InvalidConfigError("tail_gamma", self.tail_gamma, "must lie in (0, 1)")

    @classmethod
    def from_settings(cls, b: float = DEFAULT_B, k: int = DEFAULT_K, rho: float = DEFAULT_RHO,
                      m0: int = DEFAULT_M0, replications: int = DEFAULT_REPLICATIONS,
                      seed: int = DEFAULT_SEED, beta: Optional[Sequence[float]] = None,
                      predictors: Optional[Sequence[Tuple[float, float]]] = None,
                      error_sd: float = DEFAULT_ERROR_SD,
                      tail_gamma: float = DEFAULT_TAIL_GAMMA) -> 'SimulationDesign':
        """Build a design from flat settings; unspecified parts use the defaults."""
        beta = tuple(beta) if beta is not None else DEFAULT_BETA
        predictors = tuple(predictors) if predictors is not None else DEFAULT_PREDICTORS
        cfg = ProcedureConfig(rho=rho, k=k, m0=m0, p=len(beta), b=b)
        return cls(beta_true=beta, predictor_specs=predictors, error_sd=error_sd, cfg=cfg,
                   replications=replications, seed=seed, tail_gamma=tail_gamma)

    @property
    def p(self) -> int:
        return len(self.beta_true)

    @property
    def sigma2(self) -> float:
        return self.error_sd ** 2

    @property
    def n_star(self) -> float:
        if self.sigma2 == 0:
            return 0.0
        return optimal_sample_size(self.cfg.b, self.p, self.sigma2)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            'beta_true': list(self.beta_true),
            'predictor_specs': [list(spec) for spec in self.predictor_specs],
            'error_sd': self.error_sd,
            'procedure': self.cfg.to_dict(),
            'replications': self.replications,
            'seed': self.seed,
            'intercept': self.intercept,
            'tail_gamma': self.tail_gamma
        }


class SimulatedSource(ObservationSource):
    """Generates observations on demand from the design's normal model."""

    def __init__(self, design: SimulationDesign, stream: np.random.Generator):
        self.design = design
        self.stream = stream
        self._beta = np.asarray(design.beta_true)
        self._means = np.array([m for m, _ in design.predictor_specs])
        self._sds = np.sqrt([v for _, v in design.predictor_specs])

    @property
    def p(self) -> int:
        return self.design.p

    def draw(self, count: int) -> ObservationBatch:
        z = self.stream.standard_normal((count, len(self._means)))
        predictors = self._means + z * self._sds
        if self.design.intercept:
            x = np.hstack([np.ones((count, 1)), predictors])
        else:
            x = predictors
        errors = self.stream.standard_normal(count) * self.design.error_sd
        return ObservationBatch(x, x @ self._beta + errors)


def seed_stream(seed: int, replication_index: int) -> np.random.Generator:
    """
    Independent random stream for one replication.

    The stream depends only on (seed, index), so results do not depend on
    which worker runs which replication.
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(replication_index,))
    return np.random.Generator(np.random.PCG64(sequence))


class ReplicationOutcome(NamedTuple):
    """Final sample size, estimated error sd and achieved loss of one run."""
    n_final: int
    sigma_hat: float
    risk: float
    t_steps: int


def simulate_replication(design: SimulationDesign, stream: np.random.Generator) -> ReplicationOutcome:
    """Run the procedure once on freshly generated data."""
    result = run_procedure(design.cfg, SimulatedSource(design, stream))
    return ReplicationOutcome(
        n_final=result.n_final,
        sigma_hat=math.sqrt(result.fit.solution.s2),
        risk=loss_value(design.beta_true, result.fit),
        t_steps=result.t_steps
    )


@dataclass(frozen=True, eq=False)
class ReplicationRecords:
    """Per-replication results, ordered by replication index."""
    n_final: np.ndarray
    sigma_hat: np.ndarray
    risk: np.ndarray
    t_steps: np.ndarray

    def __len__(self) -> int:
        return self.n_final.shape[0]


@dataclass(frozen=True)
class ReplicationSummary:
    """Study statistics: means and standard errors of N, sigma-hat and the achieved risk."""
    b: float
    n_star: float
    n_bar: float
    se_n: float
    ratio: Optional[float]
    diff: float
    sigma_bar: float
    se_sigma: float
    r_star: float
    r_bar: float
    se_r: float
    replications: int
    n_min: int
    n_max: int
    low_tail_count: int
    tail_gamma: float
    r_predicted: float
    overshoot_theory: float

    # Columns of the tabular (CSV) projection, in order.
    TABLE_COLUMNS = ('b', 'n_star', 'n_bar', 'se_n', 'ratio', 'diff',
                     'sigma_bar', 'se_sigma', 'r_star', 'r_bar', 'se_r')

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            'b': self.b,
            'n_star': self.n_star,
            'n_bar': self.n_bar,
            'se_n': self.se_n,
            'ratio': self.ratio,
            'diff': self.diff,
            'sigma_bar': self.sigma_bar,
            'se_sigma': self.se_sigma,
            'r_star': self.r_star,
            'r_bar': self.r_bar,
            'se_r': self.se_r,
            'replications': self.replications,
            'n_min': self.n_min,
            'n_max': self.n_max,
            'low_tail_count': self.low_tail_count,
            'tail_gamma': self.tail_gamma,
            'r_predicted': self.r_predicted,
            'overshoot_theory': self.overshoot_theory
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ReplicationSummary':
        return cls(**data)

    def table_row(self) -> Tuple[Any, ...]:
        values = self.to_dict()
        return tuple(values[column] for column in self.TABLE_COLUMNS)


def _standard_error(values: np.ndarray) -> float:
    r = values.shape[0]
    if r < 2:
        return 0.0
    return math.sqrt(float(np.sum((values - values.mean()) ** 2)) / (r * r - r))


def summarize(records: ReplicationRecords, design: SimulationDesign) -> ReplicationSummary:
    """Reduce per-replication records to the study statistics."""
    r = len(records)
    if r == 1:
        logger.warning("Single replication: standard errors reported as 0")
    n = records.n_final.astype(float)
    n_star = design.n_star
    sigma2 = design.sigma2
    n_bar = float(n.mean())
    return ReplicationSummary(
        b=design.cfg.b,
        n_star=n_star,
        n_bar=n_bar,
        se_n=_standard_error(n),
        ratio=n_bar / n_star if n_star > 0 else None,
        diff=n_bar - n_star,
        sigma_bar=float(records.sigma_hat.mean()),
        se_sigma=_standard_error(records.sigma_hat),
        r_star=theoretical_risk(n_star, design.p, sigma2) if n_star > 0 else 0.0,
        r_bar=float(records.risk.mean()),
        se_r=_standard_error(records.risk),
        replications=r,
        n_min=int(records.n_final.min()),
        n_max=int(records.n_final.max()),
        low_tail_count=int(np.sum(n <= design.tail_gamma * n_star)),
        tail_gamma=design.tail_gamma,
        r_predicted=float(design.p * sigma2 * np.mean(1.0 / n)),
        overshoot_theory=projected_overshoot(design.cfg.k, design.cfg.rho)
    )


def _run_chunk(design: SimulationDesign, start: int, stop: int) -> Tuple[int, np.ndarray]:
    """Replications start..stop-1 as rows of (N, sigma_hat, risk, T)."""
    out = np.empty((stop - start, 4))
    for i in range(start, stop):
        try:
            outcome = simulate_replication(design, seed_stream(design.seed, i))
        except Exception as e:
            raise StudyError(i, f"{type(e).__name__}: {e}") from e
        out[i - start] = outcome
    return start, out


def run_replications(design: SimulationDesign, workers: int = 1,
                     progress: Optional[Progress] = None,
                     task_id: Optional[TaskID] = None) -> ReplicationRecords:
    """
    Run every replication of a study.

    Args:
        design: Study design
        workers: Number of worker processes; 1 runs in-process
        progress: Optional progress tracker
        task_id: Optional task ID for progress updates

    Returns:
        Records ordered by replication index, identical for any worker count

    Raises:
        StudyError: naming the first failed replication
    """
    total = design.replications
    table = np.empty((total, 4))

    def advance(count: int) -> None:
        if progress is not None and task_id is not None:
            progress.update(task_id, advance=count)

    if workers <= 1:
        for start in range(0, total, 100):
            stop = min(start + 100, total)
            _, table[start:stop] = _run_chunk(design, start, stop)
            advance(stop - start)
    else:
        chunk = max(1, math.ceil(total / (workers * 8)))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            pending = {executor.submit(_run_chunk, design, start, min(start + chunk, total))
                       for start in range(0, total, chunk)}
            while pending:
                done, pending = wait(pending, return_when=FIRST_EXCEPTION)
                for future in done:
                    if future.exception() is not None:
                        for other in pending:
                            other.cancel()
                        raise future.exception()
                    start, rows = future.result()
                    table[start:start + rows.shape[0]] = rows
                    advance(rows.shape[0])

    return ReplicationRecords(
        n_final=table[:, 0].astype(np.int64),
        sigma_hat=table[:, 1].copy(),
        risk=table[:, 2].copy(),
        t_steps=table[:, 3].astype(np.int64)
    )


def run_study(design: SimulationDesign, workers: int = 1,
              progress: Optional[Progress] = None,
              task_id: Optional[TaskID] = None) -> ReplicationSummary:
    """Replicate the procedure and summarize, aggregating in replication-index order."""
    logger.debug("Running %d replications with %d workers", design.replications, workers)
    records = run_replications(design, workers, progress, task_id)
    return summarize(records, design)
