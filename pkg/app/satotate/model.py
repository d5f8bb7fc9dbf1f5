"""
Sato-Tate model of lambda_g(p): lambda = 2cos(theta), theta with density (2/pi) sin^2(theta).
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Tuple

import mpmath
import numpy as np

from ..config import settings
from ..errors import ConvergenceError, DomainError
from ..hecke import mixed_moment

logger = logging.getLogger(__name__)

SAMPLER_ID = "numpy-pcg64-rejection-v1"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator for (seed, stream...); streams are independent and platform-stable."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=tuple(stream))))


def sample_lambda(rng: np.random.Generator) -> float:
    # envelope 2/pi on [0, pi]: accept with probability sin^2(theta)
    while True:
        theta = rng.uniform(0.0, math.pi)
        if rng.uniform() <= math.sin(theta) ** 2:
            return 2.0 * math.cos(theta)


def sample_lambdas(rng: np.random.Generator, size: int) -> np.ndarray:
    """Vectorized rejection sampler; same law as sample_lambda."""
    angles = np.empty(size)
    filled = 0
    while filled < size:
        need = size - filled
        batch = int(need * 2.2) + 16
        theta = rng.uniform(0.0, math.pi, batch)
        accepted = theta[rng.uniform(0.0, 1.0, batch) <= np.sin(theta) ** 2][:need]
        angles[filled:filled + accepted.size] = accepted
        filled += accepted.size
    return 2.0 * np.cos(angles)


def _st_quad(integrand, label: str) -> float:
    with mpmath.workdps(settings.quadrature_dps):
        value, error = mpmath.quad(
            lambda t: integrand(t) * 2 / mpmath.pi * mpmath.sin(t) ** 2,
            [0, mpmath.pi / 2, mpmath.pi],
            method="gauss-legendre",
            error=True,
        )
        if error > settings.quadrature_tolerance * max(1, abs(value)):
            logger.error(f"Sato-Tate quadrature for {label} did not converge: err={error}")
            raise ConvergenceError(f"quadrature for {label} not converged", float(value), float(error))
        return float(value)


@lru_cache(maxsize=None)
def st_moment_exact(power: int) -> float:
    if power < 0 or power > settings.moment_power_cap:
        raise DomainError(f"power must be in 0..{settings.moment_power_cap}, got {power}")
    if power == 0:
        return 1.0
    return _st_quad(lambda t: (2 * mpmath.cos(t)) ** power, f"E[lambda^{power}]")


@lru_cache(maxsize=None)
def mixed_moment_quadrature(a: int, b: int) -> float:
    """E[lambda^a (lambda^2 - 1)^b] by quadrature."""
    cap = settings.moment_power_cap
    if not (0 <= a <= cap and 0 <= b <= cap):
        raise DomainError(f"powers must be in 0..{cap}, got ({a}, {b})")
    if a == 0 and b == 0:
        return 1.0
    return _st_quad(
        lambda t: (2 * mpmath.cos(t)) ** a * (4 * mpmath.cos(t) ** 2 - 1) ** b,
        f"E[lambda^{a}(lambda^2-1)^{b}]",
    )


def exp_moment_exact(a: float) -> float:
    if abs(a) > settings.exp_moment_cap:
        raise DomainError(f"|a| must be <= {settings.exp_moment_cap}, got {a}")
    if a == 0:
        return 1.0
    return _st_quad(lambda t: mpmath.exp(2 * a * mpmath.cos(t)), f"E[exp({a} lambda)]")


def model_expectation_product(exponents: Sequence[Tuple[int, int]]) -> float:
    """Product over primes of E[lambda(p)^a lambda(p^2)^b], one (a, b) per prime."""
    value = 1.0
    for a, b in exponents:
        value *= mixed_moment_quadrature(a, b)
    return value


def model_expectation_exact(exponents: Sequence[Tuple[int, int]]) -> int:
    value = 1
    for a, b in exponents:
        value *= mixed_moment(a, b)
    return value


def monte_carlo_expectation(exponents: Sequence[Tuple[int, int]], n: int, seed: int) -> Tuple[float, float]:
    """(mean, standard error) of prod_p lambda(p)^a (lambda(p)^2 - 1)^b over n draws."""
    product = np.ones(n)
    for index, (a, b) in enumerate(exponents):
        lam = sample_lambdas(make_rng(seed, index), n)
        product *= lam**a * (lam**2 - 1) ** b
    std_err = float(product.std(ddof=1) / math.sqrt(n)) if n > 1 else float("inf")
    return float(product.mean()), std_err


def model_variance(u: Mapping[int, float]) -> Fraction:
    """Var of sum u(p) lambda(p)/sqrt(p) in the independent model."""
    spread = mixed_moment(2, 0) - mixed_moment(1, 0) ** 2
    return sum((Fraction(value) ** 2 / p * spread for p, value in u.items()), Fraction(0))
