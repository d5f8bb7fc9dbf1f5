"""
Kloosterman sums, Bessel functions of large order and the Petersson formula

    sum^h_{g in B_w} lambda_g(t) lambda_g(u) = delta_{t=u} + 2 pi i^{-w} sum_c S(t, u; c)/c J_{w-1}(4 pi sqrt(tu)/c).
"""
import logging
import math
from typing import Optional, Union

import mpmath
import numpy as np

from ..config import settings
from ..errors import ConvergenceError, DomainError, PrecisionError
from .watson import eigenbasis_spectrum

logger = logging.getLogger(__name__)


def kloosterman_sum(m: int, n: int, c: int) -> Union[int, float]:
    """
    S(m, n; c), a real algebraic integer. Returned as int when it lies within the
    configured tolerance of one, otherwise as a float.
    """
    if c < 1:
        raise DomainError(f"modulus must be >= 1, got {c}")
    units = [d for d in range(c) if math.gcd(d, c) == 1] if c > 1 else [0]
    inverses = [pow(d, -1, c) if c > 1 else 0 for d in units]
    phases = 2 * np.pi * (m * np.array(units, dtype=float) + n * np.array(inverses, dtype=float)) / c
    real = math.fsum(np.cos(phases))
    imag = math.fsum(np.sin(phases))
    if abs(imag) > settings.kloosterman_tolerance:
        logger.error(f"Kloosterman S({m},{n};{c}) imaginary residual {imag}")
        raise PrecisionError(f"S({m},{n};{c}) has imaginary residual {imag}", best_value=real, est_error=abs(imag))
    nearest = round(real)
    if abs(real - nearest) < settings.kloosterman_tolerance:
        return int(nearest)
    return real


def bessel_j(nu: int, x: float) -> float:
    """J_nu(x) from the ascending series at a working precision that absorbs its cancellation."""
    if nu < 0:
        raise DomainError(f"order must be nonnegative, got {nu}")
    if x == 0:
        return 1.0 if nu == 0 else 0.0
    digits = 25 + int(abs(x) / math.log(10)) + 1
    with mpmath.workdps(digits):
        half = mpmath.mpf(x) / 2
        term = half**nu / mpmath.factorial(nu)
        total = term
        m = 0
        while True:
            m += 1
            term *= -(half**2) / (m * (m + nu))
            total += term
            if m > abs(half) and abs(term) < settings.bessel_tolerance * abs(total):
                break
        return float(total)


def bessel_j_backward(nu: int, x: float) -> float:
    """J_nu(x) by backward recurrence normalized with J_0 + 2 sum J_2k = 1."""
    if x <= 0:
        raise DomainError("backward recurrence needs x > 0")
    start = 2 * ((max(nu, int(x)) + 20 + int(math.sqrt(40 * max(nu, x, 1)))) // 2)
    with mpmath.workdps(30):
        x = mpmath.mpf(x)
        upper, current = mpmath.mpf(0), mpmath.mpf(10) ** -30
        norm = mpmath.mpf(0)
        wanted = mpmath.mpf(0)
        for order in range(start, 0, -1):
            lower = 2 * order / x * current - upper
            upper, current = current, lower
            if order - 1 == nu:
                wanted = current
            if (order - 1) % 2 == 0 and order - 1 > 0:
                norm += 2 * current
        norm += current
        return float(wanted / norm)


def petersson_tail_bound(t: int, u: int, weight: int, c_max: int) -> float:
    """Bound on the terms c > c_max using |S| <= c and |J_nu(x)| <= (x/2)^nu / nu!."""
    nu = weight - 1
    log_bound = (
        math.log(2 * math.pi)
        + nu * math.log(2 * math.pi * math.sqrt(t * u))
        - math.lgamma(nu + 1)
        - (nu - 1) * math.log(c_max)
        - math.log(nu - 1)
    )
    return math.exp(log_bound)


def petersson_full_diagonal(t: int, u: int, weight: int, c_max: Optional[int] = None) -> float:
    """delta_{t=u} + 2 pi (-1)^{w/2} sum_{c<=c_max} S(t, u; c)/c J_{w-1}(4 pi sqrt(tu)/c)"""
    if t < 1 or u < 1:
        raise DomainError(f"t and u must be positive, got ({t}, {u})")
    if weight % 2:
        raise DomainError(f"weight must be even, got {weight}")
    c_max = settings.c_max if c_max is None else c_max

    tail = petersson_tail_bound(t, u, weight, c_max)
    if tail > settings.quadrature_tolerance:
        logger.error(f"Petersson series tail bound {tail:.3g} exceeds tolerance at c_max={c_max}")
        raise ConvergenceError(f"c_max={c_max} too small; tail bound {tail:.3g}", est_error=tail)

    root = 4 * math.pi * math.sqrt(t * u)
    terms = []
    for c in range(1, c_max + 1):
        s = kloosterman_sum(t, u, c)
        if s:
            terms.append(s / c * bessel_j(weight - 1, root / c))
    sign = (-1) ** (weight // 2)
    return (1.0 if t == u else 0.0) + 2 * math.pi * sign * math.fsum(terms)


def harmonic_sum_check(t: int, u: int, weight: int, ncoeffs: Optional[int] = None) -> float:
    """(2 pi^2/(w-1)) sum_{g in B_w} lambda_g(t) lambda_g(u) / L(1, sym^2 g) with L from Petersson norms."""
    spectrum = eigenbasis_spectrum(weight, ncoeffs)
    return math.fsum(
        entry.harmonic_weight * entry.form.lam(t) * entry.form.lam(u) for entry in spectrum
    )
