import logging
import math

import numpy as np
import pytest

from sequential_sizer.core import ProcedureConfig
from sequential_sizer.simulation import (
    ReplicationRecords,
    ReplicationSummary,
    SimulatedSource,
    SimulationDesign,
    run_replications,
    run_study,
    seed_stream,
    simulate_replication,
    summarize,
)
from sequential_sizer.utils.errors import InvalidConfigError


def _design(**overrides):
    settings = dict(b=0.4, replications=20, seed=99)
    settings.update(overrides)
    return SimulationDesign.from_settings(**settings)


def test_default_design():
    design = SimulationDesign()
    assert design.p == 4
    assert design.sigma2 == 4.0
    assert design.cfg == ProcedureConfig(rho=0.8, k=5, m0=2, p=4, b=0.1)
    assert design.n_star == pytest.approx(160.0)
    assert design.replications == 10_000


@pytest.mark.parametrize("overrides", [
    {'beta': (1.0, 2.0)},
    {'predictors': ((0.0, 1.0),)},
    {'predictors': ((0.0, -1.0), (0.0, 1.0), (0.0, 1.0))},
    {'predictors': ((50.0, 0.0), (200.0, 64.0), (100.0, 25.0))},
    {'error_sd': -1.0},
    {'replications': 0},
    {'seed': -1},
    {'seed': 2 ** 64},
    {'tail_gamma': 1.0},
    {'b': 0.0},
])
def test_design_validation(overrides):
    with pytest.raises(InvalidConfigError):
        _design(**overrides)


def test_design_overrides():
    design = _design(beta=(1.0, 0.5), predictors=((10.0, 4.0),), error_sd=1.0)
    assert design.p == 2
    assert design.cfg.p == 2
    assert design.cfg.m == 12
    assert design.to_dict()['predictor_specs'] == [[10.0, 4.0]]


def test_simulated_source_rows():
    design = SimulationDesign()
    batch = SimulatedSource(design, seed_stream(1, 0)).draw(20000)
    assert batch.x.shape == (20000, 4)
    assert np.all(batch.x[:, 0] == 1.0)
    np.testing.assert_allclose(batch.x[:, 1:].mean(axis=0), [50, 200, 100], rtol=2e-3)
    np.testing.assert_allclose(batch.x[:, 1:].var(axis=0), [9, 64, 25], rtol=0.05)
    residuals = batch.y - batch.x @ np.array(design.beta_true)
    assert residuals.std() == pytest.approx(2.0, rel=0.03)


def test_seed_streams_are_reproducible_and_distinct():
    a = seed_stream(7, 3).standard_normal(5)
    assert np.array_equal(a, seed_stream(7, 3).standard_normal(5))
    assert not np.array_equal(a, seed_stream(7, 4).standard_normal(5))
    assert not np.array_equal(a, seed_stream(8, 3).standard_normal(5))


def test_replication_is_deterministic():
    design = _design()
    first = simulate_replication(design, seed_stream(design.seed, 5))
    second = simulate_replication(design, seed_stream(design.seed, 5))
    assert first == second
    assert first.n_final >= 18
    assert first.sigma_hat > 0
    assert first.risk >= 0


def test_noiseless_design_stops_after_pilot():
    design = _design(error_sd=0.0, replications=3)
    records = run_replications(design)
    assert records.t_steps.tolist() == [0, 0, 0]
    assert records.n_final.tolist() == [18, 18, 18]
    summary = summarize(records, design)
    assert summary.n_star == 0.0
    assert summary.ratio is None
    assert summary.low_tail_count == 0


def test_run_replications_is_ordered_by_index():
    design = _design(replications=7)
    records = run_replications(design)
    assert len(records) == 7
    for i in (0, 6):
        outcome = simulate_replication(design, seed_stream(design.seed, i))
        assert records.n_final[i] == outcome.n_final
        assert records.risk[i] == outcome.risk


def _records(n, sigma, risk):
    return ReplicationRecords(
        n_final=np.array(n, dtype=np.int64),
        sigma_hat=np.array(sigma, dtype=float),
        risk=np.array(risk, dtype=float),
        t_steps=np.zeros(len(n), dtype=np.int64)
    )


def test_summarize_statistics():
    design = _design(b=0.1, replications=4)
    summary = summarize(_records([150, 158, 162, 170], [1.9, 2.0, 2.1, 2.0], [0.1, 0.12, 0.08, 0.1]), design)
    assert summary.n_star == pytest.approx(160.0)
    assert summary.n_bar == pytest.approx(160.0)
    assert summary.se_n == pytest.approx(np.std([150, 158, 162, 170], ddof=1) / 2.0)
    assert summary.ratio == pytest.approx(1.0)
    assert summary.diff == pytest.approx(0.0)
    assert summary.sigma_bar == pytest.approx(2.0)
    assert summary.r_star == pytest.approx(0.1)
    assert summary.r_bar == pytest.approx(0.1)
    assert (summary.n_min, summary.n_max) == (150, 170)
    assert summary.r_predicted == pytest.approx(16 * np.mean(1 / np.array([150, 158, 162, 170])))
    assert summary.overshoot_theory == pytest.approx(1.560, abs=1e-3)


def test_summarize_counts_low_tail():
    design = _design(b=0.1, replications=3)
    summary = summarize(_records([60, 80, 81], [2, 2, 2], [0.1, 0.1, 0.1]), design)
    assert summary.low_tail_count == 2


def test_single_replication_has_zero_standard_errors(caplog):
    design = _design(b=0.1, replications=1)
    with caplog.at_level(logging.WARNING, logger="sequential_sizer"):
        summary = summarize(_records([161], [2.0], [0.1]), design)
    assert summary.se_n == summary.se_sigma == summary.se_r == 0.0
    assert any("Single replication" in record.getMessage() for record in caplog.records)


def test_summary_dict_and_table_row():
    summary = run_study(_design(replications=5))
    data = summary.to_dict()
    assert ReplicationSummary.from_dict(data) == summary
    row = summary.table_row()
    assert len(row) == 11
    assert row[0] == 0.4
    assert row[1] == pytest.approx(40.0)
    assert row[2] == summary.n_bar
    assert all(math.isfinite(value) for value in row)
