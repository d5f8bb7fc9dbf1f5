from fractions import Fraction

import pytest

from app.config import OracleConfig, settings
from app.errors import ConfigError, DomainError
from app.oracles import (
    LEMMAS,
    combinato2_bound,
    combinato2_sum,
    combinato_bound,
    combinato_sum,
    dyadic_primes,
    gaussian_sum,
    model_power_expectation,
    rational_weights,
    verify_lemma_instance,
    window_primes,
)

WINDOW = (10, 40)


@pytest.fixture
def weights():
    return {p: Fraction(p % 7 - 3, 2) for p in window_primes(WINDOW)}


def test_window_primes():
    """Test half-open prime windows"""
    assert window_primes((10, 23)) == [11, 13, 17, 19, 23]
    assert dyadic_primes(3) == [11, 13]


@pytest.mark.parametrize("n", [2, 4])
def test_strategies_agree(weights, n):
    """Test direct enumeration equals the partition reorganization"""
    assert combinato_sum(WINDOW, weights, n, "direct") == combinato_sum(WINDOW, weights, n, "partition")


def test_second_moment_is_variance(weights):
    """Test n = 2 reduces to sum u^2/p, which is also the bound"""
    variance = sum(u * u / p for p, u in weights.items())
    assert combinato_sum(WINDOW, weights, 2) == variance
    assert combinato_bound(WINDOW, weights, 2) == variance


@pytest.mark.parametrize("n", [2, 4, 6])
def test_combinato_bound_holds(weights, n):
    """Test |sum| <= n!/(2^{n/2}(n/2)!) V^{n/2}"""
    assert abs(combinato_sum(WINDOW, weights, n)) <= combinato_bound(WINDOW, weights, n)


def test_odd_sums_vanish(weights):
    """Test odd n gives zero and has no bound"""
    assert combinato_sum(WINDOW, weights, 3) == 0
    with pytest.raises(DomainError):
        combinato_bound(WINDOW, weights, 3)


@pytest.mark.parametrize("big_m", [1, 2])
def test_combinato2(big_m):
    """Test dyadic sums against their bound under both strategies"""
    w = {p: Fraction(3, 2) for p in dyadic_primes(4)}
    direct = combinato2_sum(4, w, big_m, "direct")
    assert direct == combinato2_sum(4, w, big_m, "partition")
    assert abs(direct) <= combinato2_bound(4, Fraction(3, 2), big_m)


def test_direct_limit(weights, monkeypatch):
    """Test forced direct enumeration above the limit raises"""
    monkeypatch.setattr(settings, "direct_enumeration_limit", 10)
    with pytest.raises(DomainError):
        combinato_sum(WINDOW, weights, 4, "direct")
    assert combinato_sum(WINDOW, weights, 4) == combinato_sum(WINDOW, weights, 4, "partition")


def test_model_expectation_matches_exact(weights):
    """Test the quadrature model moment equals the exact sum"""
    assert model_power_expectation(WINDOW, weights, 4) == pytest.approx(float(combinato_sum(WINDOW, weights, 4)))


def test_gaussian_sum_requires_disjoint_windows(weights):
    """Test overlapping windows are rejected"""
    with pytest.raises(DomainError):
        gaussian_sum([(WINDOW, weights, 2), ((20, 50), weights, 2)], (6, {}, 0))
    with pytest.raises(DomainError):
        gaussian_sum([(WINDOW, weights, 2)], (4, {p: 1 for p in dyadic_primes(4)}, 1))


def test_rational_weights_reproducible():
    """Test seeded weights repeat and stay inside the amplitude"""
    config = OracleConfig(seed=3, amplitude=2.0)
    a = rational_weights([11, 13, 17], config)
    assert a == rational_weights([11, 13, 17], config)
    assert all(abs(v) <= 2 for v in a.values())


@pytest.mark.parametrize("lemma", LEMMAS)
def test_lemma_instances_pass(lemma):
    """Test every lemma on a default instance"""
    report = verify_lemma_instance(lemma, {"m": "6"})
    assert report.passed
    assert report.to_record()["pass"] is True
    assert report.slack >= 0


def test_unknown_lemma():
    """Test an unknown lemma id raises ConfigError"""
    with pytest.raises(ConfigError):
        verify_lemma_instance("nope")


def test_config_rejects_unknown_keys():
    """Test extra config keys raise ConfigError"""
    with pytest.raises(ConfigError):
        OracleConfig.from_mapping({"bogus": "1"})
