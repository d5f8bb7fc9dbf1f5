"""
Exact Hecke-relation expansions and the Petersson main-term moment functions.

h1 and h2 are the moments of lambda(p) and lambda(p^2) = lambda(p)^2 - 1 under the
Sato-Tate measure; everything here is big-integer arithmetic.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, NamedTuple, Tuple

from ..config import settings
from ..errors import DomainError
from .factorization import PrimeFactorization

logger = logging.getLogger(__name__)


class BinomialTerm(NamedTuple):
    sign: int
    coefficient: int
    power: int


@dataclass(frozen=True)
class HeckeExpansion:
    """lambda(p)^alpha written as an integer combination of lambda(p^m)"""

    alpha: int
    # even alpha: constant A and C(l), l = 1..alpha/2 (coefficient of lambda(p^{2l}))
    constant: int = 0
    even_coefficients: Tuple[int, ...] = ()
    # odd alpha: B (coefficient of lambda(p)) and D(l), l = 1..(alpha-1)/2 (of lambda(p^{2l+1}))
    linear: int = 0
    odd_coefficients: Tuple[int, ...] = ()
    terms: Dict[int, int] = field(default_factory=dict, compare=False)

    @property
    def is_even(self) -> bool:
        return self.alpha % 2 == 0

    def coefficient(self, m: int) -> int:
        """Coefficient of lambda(p^m)."""
        return self.terms.get(m, 0)

    def evaluate(self, theta: float) -> float:
        """Substitutes lambda(p^m) = sin((m+1)theta)/sin(theta)."""
        s = math.sin(theta)
        return math.fsum(c * math.sin((m + 1) * theta) / s for m, c in self.terms.items())

    def degenerate_value(self) -> int:
        """Substitutes lambda(p^m) = m + 1, the theta = 0 value."""
        return sum(c * (m + 1) for m, c in self.terms.items())

    def check_bounds(self) -> bool:
        bound = 2**self.alpha
        if self.is_even:
            return self.constant <= bound and sum(self.even_coefficients) <= bound
        return self.linear <= 2 * bound and sum(self.odd_coefficients) <= 2 * bound


def _ballot(alpha: int, m: int) -> int:
    """alpha!(m+1) / (((alpha-m)/2)! ((alpha+m)/2 + 1)!), the multiplicity of lambda(p^m)."""
    down = (alpha - m) // 2
    up = (alpha + m) // 2 + 1
    numerator = math.factorial(alpha) * (m + 1)
    denominator = math.factorial(down) * math.factorial(up)
    quotient, remainder = divmod(numerator, denominator)
    assert remainder == 0, (alpha, m)
    return quotient


@lru_cache(maxsize=None)
def expand_lambda_power(alpha: int) -> HeckeExpansion:
    if alpha < 1 or alpha > settings.max_power:
        logger.error(f"expand_lambda_power: alpha={alpha} outside 1..{settings.max_power}")
        raise DomainError(f"alpha must be in 1..{settings.max_power}, got {alpha}")

    if alpha % 2 == 0:
        constant = _ballot(alpha, 0)
        evens = tuple(_ballot(alpha, 2 * l) for l in range(1, alpha // 2 + 1))
        terms = {0: constant, **{2 * l: c for l, c in enumerate(evens, start=1)}}
        return HeckeExpansion(alpha, constant=constant, even_coefficients=evens, terms=terms)

    linear = _ballot(alpha, 1)
    odds = tuple(_ballot(alpha, 2 * l + 1) for l in range(1, (alpha - 1) // 2 + 1))
    terms = {1: linear, **{2 * l + 1: c for l, c in enumerate(odds, start=1)}}
    return HeckeExpansion(alpha, linear=linear, odd_coefficients=odds, terms=terms)


@lru_cache(maxsize=None)
def catalan(m: int) -> int:
    if m < 0 or m > settings.catalan_cap:
        raise DomainError(f"catalan index must be in 0..{settings.catalan_cap}, got {m}")
    return math.comb(2 * m, m) // (m + 1)


def _h1_prime_power(alpha: int) -> int:
    if alpha % 2:
        return 0
    half = alpha // 2
    return math.factorial(alpha) // (math.factorial(half) ** 2 * (half + 1))


@lru_cache(maxsize=None)
def _h2_prime_power(beta: int) -> int:
    return sum(
        math.comb(beta, j) * (-1) ** j * _h1_prime_power(2 * (beta - j))
        for j in range(beta + 1)
    )


def h1(n: PrimeFactorization) -> int:
    result = 1
    for alpha in n.exponents:
        result *= _h1_prime_power(alpha)
        if not result:
            break
    return result


def h2(n: PrimeFactorization) -> int:
    result = 1
    for beta in n.exponents:
        result *= _h2_prime_power(beta)
        if not result:
            break
    return result


def h1_power(alpha: int) -> int:
    """h1(p^alpha) for a single prime."""
    return _h1_prime_power(alpha)


def h2_power(beta: int) -> int:
    """h2(p^beta) for a single prime."""
    return _h2_prime_power(beta)


def binomial_expand_square(beta: int) -> List[BinomialTerm]:
    """(lambda^2 - 1)^beta as signed binomial terms in powers of lambda."""
    if beta < 1 or beta > settings.max_power:
        raise DomainError(f"beta must be in 1..{settings.max_power}, got {beta}")
    return [
        BinomialTerm((-1) ** j, math.comb(beta, j), 2 * (beta - j))
        for j in range(beta + 1)
    ]


def recombine_h1(terms: List[BinomialTerm]) -> int:
    return sum(t.sign * t.coefficient * _h1_prime_power(t.power) for t in terms)


@lru_cache(maxsize=None)
def mixed_moment(a: int, b: int) -> int:
    """E[lambda^a (lambda^2 - 1)^b] under Sato-Tate, exactly."""
    if a < 0 or b < 0:
        raise DomainError(f"powers must be nonnegative, got ({a}, {b})")
    return sum(
        math.comb(b, j) * (-1) ** j * _h1_prime_power(a + 2 * (b - j))
        for j in range(b + 1)
    )
