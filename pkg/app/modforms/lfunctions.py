import logging
import math
from functools import lru_cache
from typing import Dict, Mapping, Tuple

import mpmath
from sympy import primerange

from ..errors import DomainError
from .qexpansion import delta_qexpansion

logger = logging.getLogger(__name__)


def sym_square_L1(weight: int, norm: float) -> float:
    """
    L(1, sym^2 f) for f with a(1) = 1 and Petersson norm <f, f> = norm.

    Solved from |a_f(1)|^2 = (3/pi) 4 pi zeta(2) / (Gamma(k) L(1, sym^2 f)), where F = a_f(1) (4pi)^{(k-1)/2} f
    has <F, F> = 1.
    """
    if norm <= 0:
        logger.error(f"Non-positive Petersson norm {norm} at weight {weight}")
        raise DomainError("Petersson norm must be positive")
    a1_squared = 1 / (mpmath.power(4 * mpmath.pi, weight - 1) * norm)
    value = (3 / mpmath.pi) * 4 * mpmath.pi * mpmath.zeta(2) / (mpmath.gamma(weight) * a1_squared)
    return float(value)


def normalizing_coefficient_squared(weight: int, l_value: float) -> float:
    """|a_f(1)|^2 making <F, F> = 1."""
    return float((3 / mpmath.pi) * 4 * mpmath.pi * mpmath.zeta(2) / (mpmath.gamma(weight) * l_value))


def harmonic_weight(weight: int, l_value: float) -> float:
    """2 pi^2 / ((w-1) L(1, sym^2 g)), the weight of g in harmonic sums over B_w."""
    return 2 * math.pi**2 / ((weight - 1) * l_value)


def sym_square_euler_product(lambdas: Mapping[int, float], x: float) -> float:
    """prod_{p<=x} [(1 - (lambda(p)^2 - 2)/p + 1/p^2)(1 - 1/p)]^{-1}"""
    terms = []
    for p, lam in sorted(lambdas.items()):
        if p > x:
            break
        local = (1 - (lam * lam - 2) / p + 1 / p**2) * (1 - 1 / p)
        terms.append(-math.log(local))
    return math.exp(math.fsum(terms))


def triple_product_gamma_shifts(k: int) -> Tuple[float, float, float, float]:
    """Shifts mu of the four Gamma_C(s + mu) factors of L(s, f x f x g), f of weight k, g of weight 2k."""
    return ((4 * k - 3) / 2, 0.5, (2 * k - 1) / 2, (2 * k - 1) / 2)


def triple_product_conductor(k: int) -> float:
    """log of the analytic conductor at s = 1/2; of size 6 log k."""
    return 2 * math.fsum(math.log(1 + abs(0.5 + mu)) for mu in triple_product_gamma_shifts(k))


@lru_cache(maxsize=None)
def delta_lambdas(limit: int) -> Dict[int, float]:
    """lambda_Delta(p) = tau(p)/p^{11/2} for p <= limit, from the sparse product for Delta."""
    tau = delta_qexpansion(limit)
    return {int(p): tau[p] / p**5.5 for p in primerange(2, limit + 1)}
