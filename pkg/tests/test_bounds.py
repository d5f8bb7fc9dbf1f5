import math
from fractions import Fraction

import pytest

from app.errors import DomainError
from app.pipeline import (
    certify_e_trunc,
    e_trunc,
    e_trunc_exact,
    e_trunc_ratio,
    gaussian_heuristic_prediction,
    sound_upper,
    sym_side_by_side,
    techn_factor,
    truncation_length,
)


def test_e_trunc_small_cases():
    """Test E_2(x) = 1 + x + x^2/2 in floats and exactly"""
    assert e_trunc(2, 3.0) == pytest.approx(8.5)
    assert e_trunc_exact(2, Fraction(1, 3)) == Fraction(25, 18)
    assert e_trunc(0, -5.0) == 1.0


@pytest.mark.parametrize("ell", [2, 4, 10, 20])
def test_e_trunc_positive(ell):
    """Test even truncations of exp stay positive"""
    assert all(e_trunc_exact(ell, x) > 0 for x in range(-50, 51))


@pytest.mark.parametrize("ell", [-2, 3])
def test_e_trunc_domain(ell):
    """Test odd or negative ell raises"""
    with pytest.raises(DomainError):
        e_trunc(ell, 1.0)


@pytest.mark.parametrize("ell,x", [(2, -1.0), (4, -3.0), (10, -0.5), (20, -50.0), (6, 0.0)])
def test_certified_domination(ell, x):
    """Test E_ell(x) >= e^x on the negative axis"""
    assert certify_e_trunc(ell, x)


def test_certification_domain():
    """Test positive x is outside the certified range"""
    with pytest.raises(DomainError):
        certify_e_trunc(4, 1.0)


def test_truncation_length():
    """Test ell = 2 ceil(50 beta^{-3/4})"""
    assert truncation_length(1.0) == 100
    assert truncation_length(0.5) % 2 == 0
    with pytest.raises(DomainError):
        truncation_length(0.0)


def test_e_trunc_ratio():
    """Test e^x/E_ell(x) - 1 is below e^{-ell} well inside the range"""
    ratio, scale = e_trunc_ratio(20, 1.0)
    assert 0 < ratio < scale


def test_sound_upper_conductor_only():
    """Test lambda_f = 0 with x < 4 leaves the conductor term"""
    bound = sound_upper({2: 0.0, 3: 0.0}, {2: 0.5, 3: 0.5}, 3.0, 10.0)
    assert bound.prime_sum == 0 and bound.square_sum == 0
    assert bound.value == pytest.approx(60 / math.log(3))
    assert not bound.truncated


def test_sound_upper_truncated():
    """Test missing primes are reported"""
    lambdas = {p: 1.0 for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)}
    bound = sound_upper(lambdas, lambdas, 100.0, 20.0)
    assert bound.truncated
    assert bound.prime_cutoff == 47
    assert bound.omitted_bound > 0


def test_sound_upper_domain():
    """Test x < 2 and empty maps raise"""
    with pytest.raises(DomainError):
        sound_upper({2: 1.0}, {2: 1.0}, 1.5, 10.0)
    with pytest.raises(DomainError):
        sound_upper({}, {2: 1.0}, 10.0, 10.0)


def test_gaussian_heuristic_at_sqrt2():
    """Test lambda^2 = 2 kills mu and matches the simplification"""
    lambdas = {p: math.sqrt(2) for p in (2, 3, 5, 7, 11)}
    prediction = gaussian_heuristic_prediction(lambdas, 11)
    assert prediction.mu == pytest.approx(0.0, abs=1e-12)
    assert prediction.prediction == pytest.approx(prediction.simplification)


def test_techn_factor_and_side_by_side():
    """Test the log value and the sym^2 comparison"""
    lambdas = {2: 1.0, 3: -0.5, 5: 1.5}
    value, log_value = techn_factor(lambdas, math.log(30))
    assert value == pytest.approx(math.exp(log_value))
    side = sym_side_by_side(lambdas, 0.5, math.log(30))
    assert side["inverse_l_squared"] == pytest.approx(4.0)
    assert side["product"] == pytest.approx(4.0 * side["prime_exponential"])
