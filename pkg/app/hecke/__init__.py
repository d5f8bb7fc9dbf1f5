from .factorization import PrimeFactorization
from .combinatorics import (
    BinomialTerm,
    HeckeExpansion,
    binomial_expand_square,
    catalan,
    expand_lambda_power,
    h1,
    h1_power,
    h2,
    h2_power,
    mixed_moment,
    recombine_h1,
)

__all__ = [
    "PrimeFactorization",
    "BinomialTerm",
    "HeckeExpansion",
    "binomial_expand_square",
    "catalan",
    "expand_lambda_power",
    "h1",
    "h1_power",
    "h2",
    "h2_power",
    "mixed_moment",
    "recombine_h1",
]
