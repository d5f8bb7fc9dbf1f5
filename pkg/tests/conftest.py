import pytest

from app.modforms import delta_lambdas, hecke_eigenforms
from app.pipeline import build_coefficients, partition_params
from app.satotate import sample_family


@pytest.fixture
def delta_form():
    return hecke_eigenforms(12, 60)[0]


@pytest.fixture
def small_system():
    """log k = 100: I = 2, x_1 around 111, clipped to primes <= 300"""
    params = partition_params(100.0, 2.0)
    return build_coefficients(params, delta_lambdas(300), prime_cap=300)


@pytest.fixture
def small_family():
    return sample_family(300, 2000, seed=5, threads=1)
