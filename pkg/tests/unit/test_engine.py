import numpy as np
import pytest

from conftest import ConstantTracker, random_batch
from sequential_sizer.core import ObservationBatch, ProcedureConfig, engine
from sequential_sizer.core.engine import (
    FitVarianceTracker,
    SequentialProcedure,
    run_procedure,
    run_procedure_traced,
)
from sequential_sizer.ingest import ArraySource
from sequential_sizer.utils.errors import (
    InvalidConfigError,
    RankDeficientPilotError,
    SourceExhaustedError,
)


def _source(n=500, p=4, seed=1):
    return ArraySource(random_batch(np.random.default_rng(seed), n, p))


def test_constant_variance_stops_on_schedule(table_config):
    # threshold 0.8 * 4 / 0.4 * 4 = 32; sizes 14, 19, 24, 29, 34
    result, trace = run_procedure_traced(table_config, _source(),
                                         tracker_factory=lambda p: ConstantTracker(4.0))
    assert result.t_steps == 4
    assert result.sequential_n == 34
    assert result.n_projected == pytest.approx(42.5)
    assert result.n_final == 43
    assert result.top_up == 9
    assert result.fit.n == 43
    assert [entry.sample_size for entry in trace] == [14, 19, 24, 29, 34]
    assert all(entry.threshold == pytest.approx(32.0) for entry in trace)
    assert [entry.satisfied for entry in trace] == [False] * 4 + [True]


def test_pilot_alone_can_satisfy_rule(table_config):
    result, trace = run_procedure_traced(table_config, _source(),
                                         tracker_factory=lambda p: ConstantTracker(1.0))
    assert result.t_steps == 0
    assert result.sequential_n == 14
    assert result.n_final == 18
    assert len(trace) == 1


def test_rho_one_takes_no_final_batch():
    cfg = ProcedureConfig(rho=1.0, k=5, m0=2, p=4, b=0.4)
    result = run_procedure(cfg, _source(), tracker_factory=lambda p: ConstantTracker(4.0))
    # threshold 40: sizes 14 .. 39, 44
    assert result.t_steps == 6
    assert result.n_final == result.sequential_n == 44
    assert result.top_up == 0


def test_tracker_sees_every_row(table_config):
    trackers = []

    def factory(p):
        trackers.append(ConstantTracker(4.0))
        return trackers[-1]

    result = run_procedure(table_config, _source(), tracker_factory=factory)
    assert trackers[0].absorbed == result.n_final


def test_default_tracker_uses_running_fit():
    cfg = ProcedureConfig(rho=0.8, k=5, m0=2, p=4, b=0.05)
    source = _source(seed=4)
    result, trace = run_procedure_traced(cfg, source)
    assert result.n_final == source.position
    assert trace[-1].satisfied
    assert all(not entry.satisfied for entry in trace[:-1])
    for entry in trace:
        assert entry.threshold == pytest.approx(64.0 * entry.s2)
    batch = source.batch[:trace[-1].sample_size]
    beta, _, _, _ = np.linalg.lstsq(batch.x, batch.y, rcond=None)
    residuals = batch.y - batch.x @ beta
    assert trace[-1].s2 == pytest.approx(float(residuals @ residuals) / (len(batch) - 4))


def test_default_tracker_reports_fit_variance():
    rng = np.random.default_rng(2)
    tracker = FitVarianceTracker(3)
    tracker.absorb(random_batch(rng, 20, 3))
    assert tracker.current_s2() == tracker.fit.solution.s2


def test_default_run_updates_one_fit_per_draw(monkeypatch):
    calls = []
    original = engine.fit_update

    def counting_update(fit, rows):
        calls.append(len(rows))
        return original(fit, rows)

    monkeypatch.setattr(engine, "fit_update", counting_update)
    cfg = ProcedureConfig(rho=0.8, k=5, m0=2, p=4, b=0.05)
    result = run_procedure(cfg, _source(seed=3))
    draws = 1 + result.t_steps + int(result.n_final > result.sequential_n)
    assert len(calls) == draws
    assert sum(calls) == result.n_final


def test_explicit_fit_tracker_matches_default(table_config):
    default = run_procedure(table_config, _source(seed=8))
    tracked = run_procedure(table_config, _source(seed=8), tracker_factory=FitVarianceTracker)
    assert (tracked.t_steps, tracked.n_final) == (default.t_steps, default.n_final)
    np.testing.assert_array_equal(tracked.fit.solution.beta_hat, default.fit.solution.beta_hat)


def test_final_fit_contains_all_rows(table_config):
    source = _source(seed=5)
    result = run_procedure(table_config, source)
    batch = source.batch[:result.n_final]
    beta, _, _, _ = np.linalg.lstsq(batch.x, batch.y, rcond=None)
    np.testing.assert_allclose(result.fit.solution.beta_hat, beta, rtol=1e-7)


def test_exhaustion_during_pilot(table_config):
    source = _source(n=10)
    with pytest.raises(SourceExhaustedError) as info:
        run_procedure(table_config, source)
    error = info.value
    assert error.stage == "pilot"
    assert error.obtained == 10
    assert error.needed == 14
    assert error.fit.n == 10


def test_exhaustion_during_final_batch(table_config):
    source = _source(n=40)
    with pytest.raises(SourceExhaustedError) as info:
        run_procedure(table_config, source, tracker_factory=lambda p: ConstantTracker(4.0))
    assert info.value.stage == "final batch"
    assert info.value.obtained == 40
    assert info.value.needed == 43


def test_rank_deficient_pilot_keeps_sampling(caplog):
    rng = np.random.default_rng(3)
    # second predictor is zero for the three pilot rows
    x = np.column_stack([np.ones(10), np.r_[np.zeros(3), rng.standard_normal(7)]])
    source = ArraySource(ObservationBatch(x, rng.standard_normal(10)))
    cfg = ProcedureConfig(rho=1.0, k=1, m0=1, p=2, b=100.0)
    result, trace = run_procedure_traced(cfg, source)
    assert result.t_steps == 1
    assert result.n_final == 4
    assert [entry.step for entry in trace] == [1]
    assert any("S^2 undefined" in record.getMessage() for record in caplog.records)


def test_rank_deficiency_until_exhaustion():
    x = np.column_stack([np.ones(5), np.zeros(5)])
    source = ArraySource(ObservationBatch(x, np.arange(5.0)))
    cfg = ProcedureConfig(rho=1.0, k=1, m0=1, p=2, b=1.0)
    with pytest.raises(RankDeficientPilotError) as info:
        run_procedure(cfg, source)
    assert info.value.stage == "rank recovery"
    assert info.value.obtained == 5


def test_procedure_validates_config():
    with pytest.raises(InvalidConfigError):
        SequentialProcedure(ProcedureConfig(rho=0.8, k=0, m0=2, p=4, b=0.1))


def test_result_dict_carries_coefficient_table(table_config):
    result = run_procedure(table_config, _source(seed=6))
    data = result.to_dict(["(Intercept)", "a", "b", "c"])
    assert [row['name'] for row in data['coefficients']] == ["(Intercept)", "a", "b", "c"]
    assert data['n_final'] == result.n_final
    assert data['s2'] == result.fit.solution.s2
    assert all(row['std_error'] > 0 for row in data['coefficients'])
