import math

import pytest

from app.errors import DomainError
from app.modforms import (
    delta_lambdas,
    eisenstein_series,
    harmonic_weight,
    hecke_eigenforms,
    normalized_inner,
    normalizing_coefficient_squared,
    petersson_inner,
    sym_square_euler_product,
    sym_square_L1,
    triple_product_conductor,
    triple_product_gamma_shifts,
)

DELTA_NORM = 1.0353620568043209e-6


def test_delta_norm(delta_form):
    """Test <Delta, Delta> against its known value"""
    result = petersson_inner(delta_form, delta_form)
    assert result.value == pytest.approx(DELTA_NORM, rel=1e-8)
    assert result.est_error < 1e-9 * result.scale


def test_sym_square_of_delta(delta_form):
    """Test L(1, sym^2 Delta) from the norm and from the Euler product"""
    norm = petersson_inner(delta_form, delta_form).value
    l_value = sym_square_L1(12, norm)
    assert l_value == pytest.approx(0.6318, abs=2e-3)
    euler = sym_square_euler_product(delta_lambdas(10_000), 10_000)
    assert abs(euler - l_value) / l_value < 0.05


def test_normalizing_coefficient(delta_form):
    """Test |a_F(1)|^2 (4 pi)^{k-1} <f, f> = 1"""
    norm = petersson_inner(delta_form, delta_form).value
    a1 = normalizing_coefficient_squared(12, sym_square_L1(12, norm))
    assert a1 * (4 * math.pi) ** 11 * norm == pytest.approx(1.0, rel=1e-10)


def test_eigenforms_orthogonal():
    """Test distinct eigenforms of weight 24 are orthogonal"""
    f, g = hecke_eigenforms(24, 60)
    assert abs(normalized_inner(f, g)) < 1e-8
    assert normalized_inner(f, f) == pytest.approx(1.0, rel=1e-10)


def test_domain(delta_form):
    """Test unequal weights and non-cusp forms raise"""
    with pytest.raises(DomainError):
        petersson_inner(delta_form, hecke_eigenforms(16, 60)[0])
    with pytest.raises(DomainError):
        petersson_inner(eisenstein_series(4, 60), eisenstein_series(4, 60))
    with pytest.raises(DomainError):
        sym_square_L1(12, -1.0)


def test_harmonic_weight():
    """Test 2 pi^2/((w-1) L)"""
    assert harmonic_weight(24, 2.0) == pytest.approx(math.pi**2 / 23)


def test_triple_product_conductor():
    """Test the log-conductor grows like 6 log k"""
    assert triple_product_gamma_shifts(12) == (22.5, 0.5, 11.5, 11.5)
    for k in (1000, 10**6):
        ratio = triple_product_conductor(k) / (6 * math.log(k))
        assert 1.0 < ratio < 1.2
