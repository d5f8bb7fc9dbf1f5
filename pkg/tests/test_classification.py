import math

import numpy as np
import pytest

from app.errors import DomainError
from app.modforms import delta_lambdas
from app.pipeline import (
    PartitionParams,
    build_coefficients,
    classify_family,
    g_poly,
    generic_exponential_moment,
    p_poly,
    partition_params,
)
from app.satotate import constant_family, primes_up_to, sample_family


def test_coefficients_vanish_outside_scales(small_system):
    """Test u_{f,j}(p) = 0 for p > x_j and w_{f,j}(p) = 0 for p^2 > x_j"""
    logs = small_system.log_primes
    log_x1 = small_system.params.log_x(1)
    assert np.all(small_system.u[1][logs > log_x1] == 0)
    assert np.all(small_system.w[1][2 * logs > log_x1] == 0)
    assert small_system.clipped


def test_g_poly_matches_direct_sum(small_system):
    """Test G_(1,2) for one form against a direct prime sum"""
    lam_g = {p: math.cos(p) for p in small_system.primes}
    mask = small_system.window_mask(1)
    expected = math.fsum(
        small_system.u[2][n] * lam_g[p] / math.sqrt(p)
        for n, p in enumerate(small_system.primes) if mask[n]
    )
    assert g_poly(lam_g, 1, 2, small_system)[0] == pytest.approx(expected)


def test_g_poly_domain(small_system):
    """Test i > j is rejected"""
    with pytest.raises(DomainError):
        g_poly({p: 0.0 for p in small_system.primes}, 2, 1, small_system)
    with pytest.raises(DomainError):
        p_poly({p: 0.0 for p in small_system.primes}, -1, small_system)


def test_labels_partition_family(small_system, small_family):
    """Test every form gets exactly one label"""
    report = classify_family(small_family, small_system, threads=1)
    summary = report.summary()
    assert report.partition_holds()
    assert sum(summary["labels"].values()) == small_family.n_forms
    assert sum(summary["p_sets"].values()) == small_family.n_forms
    assert summary["clipped"]


def test_good_forms_respect_thresholds(small_system, small_family):
    """Test forms labelled G have every |G_(i,l)| <= beta_i^{-3/4}"""
    report = classify_family(small_family, small_system, threads=1)
    good = report.first_failure == 0
    for n, (i, _) in enumerate(report.pairs):
        assert np.all(np.abs(report.g_values[good, n]) <= report.thresholds[i - 1])
    assert np.all(report.in_good[good])


def test_classification_independent_of_threads(small_system, small_family):
    """Test the report does not depend on the worker count"""
    one = classify_family(small_family, small_system, threads=1)
    four = classify_family(small_family, small_system, threads=4)
    assert np.array_equal(one.first_failure, four.first_failure)
    assert np.array_equal(one.m_index, four.m_index)


def test_vanishing_family_is_good(small_system):
    """Test lambda_g = 0 gives G = 0 for every form"""
    family = constant_family(small_system.primes, [0.0] * len(small_system.primes), n_forms=4)
    report = classify_family(family, small_system, threads=1)
    assert report.labels == ["G"] * 4
    assert np.all(report.g_values == 0)


def test_exponential_moment(small_system, small_family):
    """Test the empirical exponential moment on the first window"""
    report = classify_family(small_family, small_system, threads=1)
    empirical, predicted = generic_exponential_moment(report, small_system, 1)
    assert empirical > 0
    assert predicted >= 1


def test_nominal_system_refused():
    """Test coefficient systems need log k"""
    with pytest.raises(DomainError):
        build_coefficients(PartitionParams.from_log_loglog(5.2e4, 1e5), delta_lambdas(50))


def test_g_poly_variance_matches_u_square_sum():
    """Test Var G_(i,I) over a sampled family equals sum u^2/p within three standard errors"""
    params = partition_params(8.0, 2.0)
    coeffs = build_coefficients(params, {p: 1.3 for p in primes_up_to(50)})
    family = sample_family(50, 100_000, seed=5, threads=1)
    for i in range(1, params.I + 1):
        values = g_poly(family, i, params.I, coeffs)
        centred = values - values.mean()
        variance = np.mean(centred**2)
        se = math.sqrt(np.mean(centred**4) - variance**2) / math.sqrt(len(values))
        assert coeffs.u_square_sum(i) > 0
        assert abs(variance - coeffs.u_square_sum(i)) <= 3 * se
