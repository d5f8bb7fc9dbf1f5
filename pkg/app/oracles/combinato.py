"""
Evaluators for the combinatorial moment lemmas.

Two strategies per sum: direct enumeration of prime tuples, and the partition
reorganization (distinct primes q^alpha with multinomial counts), run as a
truncated exponential generating function product over the primes of the window.
"""
import itertools
import logging
import math
from collections import Counter
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

from sympy import primerange

from ..config import settings
from ..errors import DomainError
from ..hecke import h1_power, h2_power
from ..satotate import st_moment_exact

logger = logging.getLogger(__name__)

Window = Tuple[float, float]


def window_primes(window: Window) -> List[int]:
    """Primes p with x1 < p <= x2."""
    x1, x2 = window
    return [int(p) for p in primerange(math.floor(x1) + 1, math.floor(x2) + 1)]


def dyadic_primes(m: int) -> List[int]:
    """Primes in (2^m, 2^(m+1)]."""
    return window_primes((2**m, 2 ** (m + 1)))


def as_fraction(value) -> Fraction:
    # every float is a dyadic rational, so the conversion is exact
    return value if isinstance(value, Fraction) else Fraction(value)


def _egf_product(factors: Iterable[Sequence[Fraction]], degree: int) -> List[Fraction]:
    poly = [Fraction(0)] * (degree + 1)
    poly[0] = Fraction(1)
    for factor in factors:
        out = [Fraction(0)] * (degree + 1)
        for i, a in enumerate(poly):
            if a:
                for j in range(min(len(factor), degree + 1 - i)):
                    if factor[j]:
                        out[i + j] += a * factor[j]
        poly = out
    return poly


def _sqrt_exact(value: int) -> int:
    root = math.isqrt(value)
    assert root * root == value
    return root


def _enumeration_size(primes: Sequence[int], length: int) -> int:
    return len(primes) ** length


def _choose_strategy(strategy: str, primes: Sequence[int], length: int) -> str:
    if strategy not in ("auto", "direct", "partition"):
        raise DomainError(f"unknown strategy {strategy!r}")
    if strategy == "auto":
        too_big = _enumeration_size(primes, length) > settings.direct_enumeration_limit
        return "partition" if too_big else "direct"
    if strategy == "direct" and _enumeration_size(primes, length) > settings.direct_enumeration_limit:
        raise DomainError(f"{len(primes)}^{length} tuples exceed the direct enumeration limit")
    return strategy


def combinato_sum(window: Window, u: Mapping[int, float], n: int, strategy: str = "auto") -> Fraction:
    """
    Sum over n-tuples of primes in the window of u(p1)...u(pn)/sqrt(p1...pn) h1(p1...pn).

    Exact: h1 vanishes unless the product is a square, so the square root is an integer.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    primes = window_primes(window)
    if n % 2 or not primes:
        return Fraction(0)
    weights = {p: as_fraction(u.get(p, 0)) for p in primes}
    mode = _choose_strategy(strategy, primes, n)
    logger.debug(f"combinato_sum: {len(primes)} primes, n={n}, strategy={mode}")

    if mode == "direct":
        total = Fraction(0)
        for combo in itertools.product(primes, repeat=n):
            counts = Counter(combo)
            if any(e % 2 for e in counts.values()):
                continue
            numerator = Fraction(1)
            root = 1
            weight = 1
            for p, e in counts.items():
                numerator *= weights[p] ** e
                root *= p ** (e // 2)
                weight *= h1_power(e)
            total += numerator * weight / root
        return total

    factors = []
    for p in primes:
        base = weights[p] ** 2 / p
        factors.append([
            (base ** (a // 2) * h1_power(a) / math.factorial(a)) if a % 2 == 0 else Fraction(0)
            for a in range(n + 1)
        ])
    return math.factorial(n) * _egf_product(factors, n)[n]


def combinato_bound(window: Window, u: Mapping[int, float], n: int) -> Fraction:
    if n % 2:
        logger.error(f"combinato_bound requested for odd n={n}")
        raise DomainError(f"bound is stated for even n only, got {n}")
    half = n // 2
    variance = sum((as_fraction(u.get(p, 0)) ** 2 / p for p in window_primes(window)), Fraction(0))
    return Fraction(math.factorial(n), 2**half * math.factorial(half)) * variance**half


def combinato2_sum(m: int, w: Mapping[int, float], big_m: int, strategy: str = "auto") -> Fraction:
    """Sum over 2M-tuples of primes in (2^m, 2^(m+1)] of w(p1)...w(p2M)/(p1...p2M) h2(p1...p2M)."""
    if big_m < 1:
        raise DomainError(f"M must be positive, got {big_m}")
    primes = dyadic_primes(m)
    if not primes:
        return Fraction(0)
    length = 2 * big_m
    weights = {p: as_fraction(w.get(p, 0)) for p in primes}
    mode = _choose_strategy(strategy, primes, length)

    if mode == "direct":
        total = Fraction(0)
        for combo in itertools.product(primes, repeat=length):
            counts = Counter(combo)
            if any(e == 1 for e in counts.values()):
                continue
            term = Fraction(1)
            for p, e in counts.items():
                term *= (weights[p] / p) ** e * h2_power(e)
            total += term
        return total

    factors = [
        [(weights[p] / p) ** b * h2_power(b) / math.factorial(b) for b in range(length + 1)]
        for p in primes
    ]
    return math.factorial(length) * _egf_product(factors, length)[length]


def combinato2_bound(m: int, c: float, big_m: int) -> Fraction:
    c = as_fraction(c)
    return Fraction(math.factorial(2 * big_m), math.factorial(big_m)) * (72 * c**2 / Fraction(2) ** m) ** big_m


def combinato2_bound_log(m: int, c: float, big_m: int) -> float:
    """Natural log of combinato2_bound via lgamma."""
    return (
        math.lgamma(2 * big_m + 1)
        - math.lgamma(big_m + 1)
        + big_m * (math.log(72) + 2 * math.log(float(c)) - m * math.log(2))
    )


def gaussian_main_term(windows: Sequence[Tuple[Window, Mapping[int, float], int]],
                       squared_window: Tuple[int, float, int]) -> Fraction:
    value = Fraction(1)
    for window, u, n in windows:
        if n % 2:
            return Fraction(0)
        if n:
            value *= combinato_bound(window, u, n)
    m, c, big_m = squared_window
    if big_m:
        value *= combinato2_bound(m, c, big_m)
    return value


def gaussian_sum(windows: Sequence[Tuple[Window, Mapping[int, float], int]],
                 squared_window: Tuple[int, Mapping[int, float], int]) -> Fraction:
    """
    Independent-model value of prod_i G_i^{n_i} * P^{2M}: the windows carry distinct primes,
    so the expectation factorizes into combinato and combinato2 sums.
    """
    seen = set()
    for window, _, _ in windows:
        primes = set(window_primes(window))
        if primes & seen:
            raise DomainError("windows must be disjoint")
        seen |= primes
    m, w, big_m = squared_window
    if big_m and set(dyadic_primes(m)) & seen:
        raise DomainError(f"squared window (2^{m}, 2^{m + 1}] overlaps the linear windows")

    value = Fraction(1)
    for window, u, n in windows:
        if n:
            value *= combinato_sum(window, u, n)
    if big_m:
        value *= combinato2_sum(m, w, big_m)
    return value


def model_power_expectation(window: Window, u: Mapping[int, float], n: int) -> float:
    """E[(sum u(p) lambda(p)/sqrt p)^n] with Sato-Tate moments taken from quadrature."""
    primes = window_primes(window)
    if not primes:
        return 0.0 if n else 1.0
    poly = [1.0] + [0.0] * n
    for p in primes:
        scale = float(u.get(p, 0)) / math.sqrt(p)
        factor = [st_moment_exact(a) * scale**a / math.factorial(a) for a in range(n + 1)]
        out = [0.0] * (n + 1)
        for i, a in enumerate(poly):
            for j in range(n + 1 - i):
                out[i + j] += a * factor[j]
        poly = out
    return math.factorial(n) * poly[n]
