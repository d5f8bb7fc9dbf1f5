import mpmath
import numpy as np
import pytest

from app.errors import DomainError
from app.modforms import deligne_violations, hecke_eigenforms, lambda_vector, multiplicativity_defect


def test_delta_is_the_weight_12_eigenform(delta_form):
    """Test S_12 is spanned by the rational form Delta"""
    assert delta_form.rational
    assert delta_form.a(2) == -24
    assert delta_form.lam(2) == pytest.approx(-24 / 2**5.5)


def test_weight_24_eigenvalues():
    """Test T_2 eigenvalues on S_24 are 540 -+ 12 sqrt(144169)"""
    forms = hecke_eigenforms(24, 60)
    assert len(forms) == 2
    root = 12 * mpmath.sqrt(144169)
    assert float(forms[0].eigenvalue_t2) == pytest.approx(float(540 - root), rel=1e-12)
    assert float(forms[1].eigenvalue_t2) == pytest.approx(float(540 + root), rel=1e-12)
    assert all(f.a(1) == 1 for f in forms)


def test_trace_of_t2():
    """Test the eigenvalues of T_2 sum to its trace"""
    forms = hecke_eigenforms(36, 80)
    assert float(sum(f.a(2) for f in forms)) == pytest.approx(float(sum(f.eigenvalue_t2 for f in forms)))


@pytest.mark.parametrize("k", [12, 16, 20, 24, 28])
def test_deligne_and_multiplicativity(k):
    """Test |lambda(p)| <= 2 and the Hecke relations"""
    for f in hecke_eigenforms(k, 200):
        assert deligne_violations(f, 200) == []
        assert multiplicativity_defect(f, 100) < 1e-10


@pytest.mark.slow
@pytest.mark.parametrize("k", range(30, 42, 2))
def test_deligne_high_weights(k):
    """Test the Deligne bound up to weight 40 and p <= 1000"""
    for f in hecke_eigenforms(k, 1000):
        assert deligne_violations(f, 1000) == []


def test_lambda_vector(delta_form):
    """Test lambda_f at a list of primes"""
    vector = lambda_vector(delta_form, [2, 3, 5])
    assert isinstance(vector, np.ndarray)
    assert vector[1] == pytest.approx(252 / 3**5.5)


def test_empty_space():
    """Test weights without cusp forms"""
    assert hecke_eigenforms(14, 40) == ()


def test_coefficients_domain(delta_form):
    """Test asking past the truncation raises"""
    with pytest.raises(DomainError):
        delta_form.coefficients(delta_form.N + 5)
