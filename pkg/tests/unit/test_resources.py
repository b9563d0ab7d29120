import pytest

from sequential_sizer import resources
from sequential_sizer.config.defaults import WORKERS_ENV
from sequential_sizer.utils.errors import InvalidConfigError


@pytest.mark.parametrize("cores, expected", [(None, 1), (1, 1), (2, 1), (4, 2), (9, 6)])
def test_worker_count_reserves_a_core(monkeypatch, cores, expected):
    monkeypatch.setattr(resources.psutil, 'cpu_count', lambda logical=True: cores)
    assert resources.get_worker_count() == expected


def test_explicit_request_wins(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "7")
    assert resources.resolve_workers(3) == 3


def test_environment_override(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "5")
    assert resources.resolve_workers() == 5


def test_detection_without_environment(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    monkeypatch.setattr(resources, 'get_worker_count', lambda: 4)
    assert resources.resolve_workers() == 4


@pytest.mark.parametrize("value", ["many", "0", "-2"])
def test_bad_environment_value(monkeypatch, value):
    monkeypatch.setenv(WORKERS_ENV, value)
    with pytest.raises(InvalidConfigError):
        resources.resolve_workers()
