import math

import mpmath
import pytest

from app.errors import ConvergenceError, DomainError
from app.modforms import (
    bessel_j,
    bessel_j_backward,
    harmonic_sum_check,
    kloosterman_sum,
    petersson_full_diagonal,
    petersson_tail_bound,
)


@pytest.mark.parametrize("m,n,c,expected", [(1, 1, 1, 1), (1, 1, 2, 1), (1, 1, 3, -1), (2, 3, 4, 0)])
def test_kloosterman_integer_values(m, n, c, expected):
    """Test small Kloosterman sums that are rational integers"""
    assert kloosterman_sum(m, n, c) == expected


def test_kloosterman_real_value():
    """Test S(1, 1; 5) = (3 - sqrt 5)/2 is returned as a real"""
    value = kloosterman_sum(1, 1, 5)
    assert isinstance(value, float)
    assert value == pytest.approx((3 - math.sqrt(5)) / 2, abs=1e-12)


def test_kloosterman_symmetry_and_weil():
    """Test S(m, n; c) = S(n, m; c) and |S| <= c"""
    for c in range(1, 40):
        assert kloosterman_sum(2, 5, c) == pytest.approx(kloosterman_sum(5, 2, c), abs=1e-9)
        assert abs(kloosterman_sum(2, 5, c)) <= c


def test_kloosterman_domain():
    """Test modulus zero raises"""
    with pytest.raises(DomainError):
        kloosterman_sum(1, 1, 0)


@pytest.mark.parametrize("nu,x", [(0, 1.0), (11, 3.0), (23, 12.566), (23, 40.0), (47, 60.0)])
def test_bessel_series(nu, x):
    """Test the ascending series against mpmath"""
    assert bessel_j(nu, x) == pytest.approx(float(mpmath.besselj(nu, x)), rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("nu,x", [(3, 10.0), (23, 30.0)])
def test_bessel_backward_agrees(nu, x):
    """Test Miller recurrence against the series"""
    assert bessel_j_backward(nu, x) == pytest.approx(bessel_j(nu, x), rel=1e-10)


def test_weight_12_closure():
    """Test the Petersson formula on the one-dimensional S_12"""
    assert harmonic_sum_check(1, 1, 12) == pytest.approx(petersson_full_diagonal(1, 1, 12), abs=1e-6)
    assert harmonic_sum_check(1, 2, 12) == pytest.approx(petersson_full_diagonal(1, 2, 12), abs=1e-6)


@pytest.mark.parametrize("t,u", [(1, 1), (1, 2), (2, 3), (3, 3)])
def test_weight_24_closure(t, u):
    """Test both sides of the Petersson formula over B_24"""
    assert abs(harmonic_sum_check(t, u, 24) - petersson_full_diagonal(t, u, 24)) < 1e-3


def test_tail_bound():
    """Test a short Kloosterman series is refused"""
    assert petersson_tail_bound(1, 1, 24, 200) < 1e-12
    with pytest.raises(ConvergenceError):
        petersson_full_diagonal(1, 1, 12, c_max=1)


def test_full_diagonal_domain():
    """Test odd weight and nonpositive indices raise"""
    with pytest.raises(DomainError):
        petersson_full_diagonal(1, 1, 13)
    with pytest.raises(DomainError):
        petersson_full_diagonal(0, 1, 12)
