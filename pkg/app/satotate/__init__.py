from .model import (
    SAMPLER_ID,
    exp_moment_exact,
    make_rng,
    mixed_moment_quadrature,
    model_expectation_exact,
    model_expectation_product,
    model_variance,
    monte_carlo_expectation,
    sample_lambda,
    sample_lambdas,
    st_moment_exact,
)
from .family import FamilySample, constant_family, primes_up_to, sample_family

__all__ = [
    "SAMPLER_ID",
    "FamilySample",
    "constant_family",
    "exp_moment_exact",
    "make_rng",
    "mixed_moment_quadrature",
    "model_expectation_exact",
    "model_expectation_product",
    "model_variance",
    "monte_carlo_expectation",
    "primes_up_to",
    "sample_family",
    "sample_lambda",
    "sample_lambdas",
    "st_moment_exact",
]
