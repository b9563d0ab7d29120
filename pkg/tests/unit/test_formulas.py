from fractions import Fraction

import pytest

from sequential_sizer.core.formulas import (
    exact_rho,
    final_sample_size,
    optimal_sample_size,
    strict_floor,
    theoretical_risk,
)
from sequential_sizer.utils.errors import InvalidArgumentError


def test_optimal_sample_size_matches_simulation_table():
    assert optimal_sample_size(0.1, 4, 4.0) == pytest.approx(160.0)
    assert optimal_sample_size(0.4, 4, 4.0) == pytest.approx(40.0)
    assert optimal_sample_size(0.02, 4, 4.0) == pytest.approx(800.0)


def test_theoretical_risk_at_optimal_size_equals_bound():
    n_star = optimal_sample_size(0.04, 4, 4.0)
    assert theoretical_risk(n_star, 4, 4.0) == pytest.approx(0.04)


def test_theoretical_risk_accepts_fractional_n():
    assert theoretical_risk(42.5, 4, 4.0) == pytest.approx(16 / 42.5)


@pytest.mark.parametrize("b, p, sigma2", [
    (0, 4, 4.0),
    (-0.1, 4, 4.0),
    (0.1, 0, 4.0),
    (0.1, 4, 0.0),
    (float('nan'), 4, 4.0),
    (float('inf'), 4, 4.0),
    (True, 4, 4.0),
    ("0.1", 4, 4.0),
])
def test_optimal_sample_size_rejects_bad_arguments(b, p, sigma2):
    with pytest.raises(InvalidArgumentError):
        optimal_sample_size(b, p, sigma2)


def test_theoretical_risk_rejects_nonpositive_n():
    with pytest.raises(InvalidArgumentError):
        theoretical_risk(0, 4, 4.0)


@pytest.mark.parametrize("u, expected", [
    (10, 9),
    (10.5, 10),
    (0.2, 0),
    (Fraction(85, 2), 42),
    (Fraction(50), 49),
    (-1.5, -2),
])
def test_strict_floor(u, expected):
    assert strict_floor(u) == expected


def test_exact_rho_uses_decimal_value():
    assert exact_rho(0.8) == Fraction(4, 5)
    assert exact_rho(0.1) == Fraction(1, 10)
    assert exact_rho(1) == Fraction(1)


def test_final_sample_size_rounds_up_past_projection():
    assert final_sample_size(34, 0.8) == (42.5, 43)
    assert final_sample_size(14, 0.8) == (17.5, 18)


def test_final_sample_size_integral_projection_is_kept():
    assert final_sample_size(40, 0.8) == (50.0, 50)
    assert final_sample_size(44, 0.8) == (55.0, 55)


def test_final_sample_size_with_rho_one_is_sequential_size():
    for n in (14, 19, 123):
        projected, final = final_sample_size(n, 1.0)
        assert projected == n
        assert final == n
