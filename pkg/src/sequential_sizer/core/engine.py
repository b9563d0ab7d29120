"""Sequential learning procedure with accelerated k-at-a-time sampling."""

import logging
from typing import Callable, List, Optional, Tuple

from ..utils.errors import (
    ExhaustedError,
    InsufficientDataError,
    RankDeficientError,
    RankDeficientPilotError,
    SourceExhaustedError,
)
from .formulas import final_sample_size
from .interfaces import ObservationSource, VarianceTracker
from .models import ObservationBatch, ProcedureConfig, StoppingResult, TraceEntry
from .regression import RegressionFit, fit_init, fit_update
from .validation import validate_config

logger = logging.getLogger(__name__)


class FitVarianceTracker(VarianceTracker):
    """
    S^2 of a running least-squares fit kept by the tracker itself.

    The procedure does not need one by default: without a tracker factory
    it reads S^2 straight from the fit of the run.
    """

    def __init__(self, p: int):
        self.fit = fit_init([], p)

    def absorb(self, rows: ObservationBatch) -> None:
        self.fit = fit_update(self.fit, rows)

    def current_s2(self) -> float:
        return self.fit.solution.s2


class SequentialProcedure:
    """
    Runs the procedure against an observation source.

    Starting from a pilot of m = m0*k + p rows, k rows are drawn at a time
    until m + k*n >= rho * p * S^2 / b. The projected total N* = (m + k*T)/rho
    is then rounded to N = strict_floor(N*) + 1 and the shortfall is drawn
    in one batch.
    """

    def __init__(self, cfg: ProcedureConfig,
                 tracker_factory: Optional[Callable[[int], VarianceTracker]] = None):
        self.cfg = validate_config(cfg)
        self.tracker_factory = tracker_factory

    def run(self, source: ObservationSource) -> StoppingResult:
        return self._run(source, trace=None)

    def run_traced(self, source: ObservationSource) -> Tuple[StoppingResult, List[TraceEntry]]:
        trace: List[TraceEntry] = []
        return self._run(source, trace=trace), trace

    def _run(self, source: ObservationSource, trace: Optional[List[TraceEntry]]) -> StoppingResult:
        cfg = self.cfg
        tracker = self.tracker_factory(cfg.p) if self.tracker_factory else None
        state = _RunState(fit_init([], cfg.p), tracker)
        coefficient = cfg.rho * cfg.p / cfg.b

        state.draw(source, cfg.m, needed=cfg.m, stage="pilot")
        logger.debug("Pilot of %d rows drawn", cfg.m)

        step = 0
        while True:
            sample_size = cfg.m + cfg.k * step
            try:
                s2 = state.current_s2()
            except (InsufficientDataError, RankDeficientError) as e:
                # S^2 undefined: keep sampling k at a time until it is.
                logger.warning("S^2 undefined at n=%d (%s); drawing %d more rows",
                               sample_size, e, cfg.k)
                state.draw(source, cfg.k, needed=sample_size + cfg.k,
                           stage="rank recovery", rank_deficient=True)
                step += 1
                continue

            threshold = coefficient * s2
            if trace is not None:
                trace.append(TraceEntry(step=step, sample_size=sample_size, s2=s2, threshold=threshold))
            if sample_size >= threshold:
                break
            state.draw(source, cfg.k, needed=sample_size + cfg.k, stage="sequential sampling")
            step += 1

        sequential_n = cfg.m + cfg.k * step
        n_projected, n_final = final_sample_size(sequential_n, cfg.rho)
        top_up = n_final - sequential_n
        if top_up > 0:
            state.draw(source, top_up, needed=n_final, stage="final batch")

        logger.debug("Stopped after T=%d steps: N*=%.3f, N=%d", step, n_projected, n_final)
        return StoppingResult(
            t_steps=step,
            sequential_n=sequential_n,
            n_projected=n_projected,
            n_final=n_final,
            fit=state.fit
        )


class _RunState:
    """Fit of one run, plus the optional tracker fed the same rows."""

    def __init__(self, fit: RegressionFit, tracker: Optional[VarianceTracker] = None):
        self.fit = fit
        self.tracker = tracker

    def current_s2(self) -> float:
        if self.tracker is None:
            return self.fit.solution.s2
        return self.tracker.current_s2()

    def absorb(self, rows: ObservationBatch) -> None:
        if len(rows):
            self.fit = fit_update(self.fit, rows)
            if self.tracker is not None:
                self.tracker.absorb(rows)

    def draw(self, source: ObservationSource, count: int, needed: int,
             stage: str, rank_deficient: bool = False) -> None:
        try:
            rows = source.draw(count)
        except ExhaustedError as e:
            if e.rows is not None:
                self.absorb(e.rows)
            error = RankDeficientPilotError if rank_deficient else SourceExhaustedError
            raise error(obtained=self.fit.n, needed=needed, stage=stage, fit=self.fit) from e
        self.absorb(rows)


def run_procedure(cfg: ProcedureConfig, source: ObservationSource,
                  tracker_factory: Optional[Callable[[int], VarianceTracker]] = None) -> StoppingResult:
    """Run the procedure once and return its stopping result."""
    return SequentialProcedure(cfg, tracker_factory).run(source)


def run_procedure_traced(cfg: ProcedureConfig, source: ObservationSource,
                         tracker_factory: Optional[Callable[[int], VarianceTracker]] = None
                         ) -> Tuple[StoppingResult, List[TraceEntry]]:
    """Run the procedure once, recording every evaluation of the stopping rule."""
    return SequentialProcedure(cfg, tracker_factory).run_traced(source)
