import logging

import numpy as np
import pytest

from sequential_sizer.config import resolve_procedure_config
from sequential_sizer.core import ProcedureConfig, validate_config
from sequential_sizer.utils.errors import InvalidConfigError


def test_pilot_size(table_config):
    assert table_config.m == 14
    assert ProcedureConfig(rho=0.5, k=2, m0=10, p=14, b=0.01).m == 34


def test_validate_config_returns_normalized_copy(table_config):
    raw = ProcedureConfig(rho=1, k=np.int64(5), m0=2, p=4, b=1)
    validated = validate_config(raw)
    assert validated == ProcedureConfig(rho=1.0, k=5, m0=2, p=4, b=1.0)
    assert type(validated.k) is int
    assert type(validated.rho) is float
    assert validate_config(validated) == validated
    assert validate_config(table_config) == table_config


@pytest.mark.parametrize("changes, field", [
    ({'rho': 0}, 'rho'),
    ({'rho': 1.5}, 'rho'),
    ({'rho': float('nan')}, 'rho'),
    ({'k': 0}, 'k'),
    ({'k': 2.0}, 'k'),
    ({'k': True}, 'k'),
    ({'m0': 0}, 'm0'),
    ({'p': 0}, 'p'),
    ({'b': 0}, 'b'),
    ({'b': -0.1}, 'b'),
    ({'b': float('inf')}, 'b'),
])
def test_validate_config_names_violated_field(table_config, changes, field):
    values = table_config.to_dict()
    values.update(changes)
    with pytest.raises(InvalidConfigError) as info:
        validate_config(ProcedureConfig.from_dict(values))
    assert info.value.field == field
    assert isinstance(info.value, ValueError)


def test_validate_config_warns_when_pilot_reaches_target(table_config, caplog):
    with caplog.at_level(logging.WARNING, logger="sequential_sizer"):
        validate_config(table_config, sigma2_hint=4.0)
    assert not caplog.records

    loose = ProcedureConfig(rho=0.8, k=5, m0=2, p=4, b=2.0)
    with caplog.at_level(logging.WARNING, logger="sequential_sizer"):
        validate_config(loose, sigma2_hint=4.0)
    assert any("stop immediately" in record.getMessage() for record in caplog.records)


def test_config_dict_round_trip(table_config):
    data = table_config.to_dict()
    assert data['m'] == 14
    assert ProcedureConfig.from_dict(data) == table_config


def test_resolve_later_layers_win():
    defaults = {'rho': 0.5, 'k': 2, 'm0': 10, 'b': 0.01}
    cfg = resolve_procedure_config(14, defaults, {'k': 3, 'b': 0.02}, {'b': 0.05, 'rho': None})
    assert cfg == ProcedureConfig(rho=0.5, k=3, m0=10, p=14, b=0.05)


def test_resolve_rejects_unknown_and_missing_keys():
    with pytest.raises(InvalidConfigError) as info:
        resolve_procedure_config(4, {'rho': 0.5, 'k': 2, 'm0': 10, 'b': 0.01, 'alpha': 1})
    assert info.value.field == 'alpha'

    with pytest.raises(InvalidConfigError) as info:
        resolve_procedure_config(4, {'rho': 0.5, 'k': 2, 'm0': 10})
    assert info.value.field == 'b'


def test_resolve_validates_merged_values():
    with pytest.raises(InvalidConfigError):
        resolve_procedure_config(4, {'rho': 0.5, 'k': 2, 'm0': 10, 'b': 0.01}, {'rho': 2})
