"""
Finite evaluators for the upper bound on log L(1/2, f x f x g), truncated exponentials
and the Gaussian heuristic for the fourth moment.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import mpmath
from pydantic import BaseModel
from sympy import primerange

from ..config import settings
from ..errors import DomainError
from ..modforms import eigenbasis_spectrum, fourth_moment, hecke_eigenforms

logger = logging.getLogger(__name__)


class SoundBound(BaseModel):
    """Upper bound for log L(1/2, f x f x g) without its unspecified O(1)"""

    value: float
    prime_sum: float
    square_sum: float
    conductor_term: float
    x: float
    prime_cutoff: int
    truncated: bool
    omitted_bound: float
    caveat: str = "excludes the O(1) term"


class HeuristicPrediction(BaseModel):
    mu: float
    sigma2: float
    prediction: float
    simplification: float


def _lambda_map(source, limit: Optional[float] = None) -> Mapping[int, float]:
    if hasattr(source, "lambdas_at_primes"):
        return source.lambdas_at_primes(None if limit is None else int(limit))
    return source


def sound_upper(f, g, x: float, log_k: float) -> SoundBound:
    """
    sum_{p<=x} lambda_f(p)^2 lambda_g(p) p^{-1/2-1/log x} log(x/p)/log x
    + sum_{p^2<=x} (lambda_f(p)^4 - 4 lambda_f(p)^2 + 4)(lambda_g(p^2) - 1)/(2 p^{1+2/log x}) log(x/p^2)/log x
    + 6 log k/log x
    """
    if x < 2:
        logger.error(f"sound_upper: x = {x} < 2")
        raise DomainError(f"x must be >= 2, got {x}")
    lam_f = _lambda_map(f, x)
    lam_g = _lambda_map(g, x)
    if not lam_f or not lam_g:
        raise DomainError("sound_upper needs lambda_f and lambda_g at p = 2 at least")
    available = min(max(lam_f, default=1), max(lam_g, default=1))
    cutoff = int(min(math.floor(x), available))
    log_x = math.log(x)

    prime_terms, square_terms = [], []
    for p in primerange(2, cutoff + 1):
        p = int(p)
        lf, lg = lam_f[p], lam_g[p]
        prime_terms.append(lf * lf * lg * p ** (-0.5 - 1 / log_x) * math.log(x / p) / log_x)
        if p * p <= x:
            quartic = lf**4 - 4 * lf**2 + 4
            square_terms.append(
                quartic * (lg * lg - 2) / (2 * p ** (1 + 2 / log_x)) * math.log(x / p**2) / log_x
            )

    truncated = cutoff < math.floor(x)
    omitted = 0.0
    if truncated:
        # |terms| <= 8 p^{-1/2} and 24/p; prime counting by p/log p
        omitted = 16 * (math.sqrt(x) - math.sqrt(cutoff)) / math.log(cutoff)
        if math.sqrt(x) > cutoff:
            omitted += 24 * (math.log(math.log(math.sqrt(x))) - math.log(math.log(cutoff)))

    prime_sum = math.fsum(prime_terms)
    square_sum = math.fsum(square_terms)
    conductor = 6 * log_k / log_x
    return SoundBound(
        value=prime_sum + square_sum + conductor,
        prime_sum=prime_sum,
        square_sum=square_sum,
        conductor_term=conductor,
        x=float(x),
        prime_cutoff=cutoff,
        truncated=truncated,
        omitted_bound=omitted,
    )


def _check_ell(ell: int):
    if ell < 0 or ell % 2:
        logger.error(f"truncated exponential with ell = {ell}")
        raise DomainError(f"ell must be even and nonnegative, got {ell}")


def e_trunc(ell: int, x: float) -> float:
    """E_ell(x) = sum_{j<=ell} x^j/j!"""
    _check_ell(ell)
    terms = [1.0]
    term = 1.0
    for j in range(1, ell + 1):
        term *= x / j
        terms.append(term)
    return math.fsum(terms)


def e_trunc_exact(ell: int, x) -> Fraction:
    _check_ell(ell)
    x = Fraction(x)
    term = Fraction(1)
    total = Fraction(1)
    for j in range(1, ell + 1):
        term *= x / j
        total += term
    return total


def _mpf_fraction(value) -> Fraction:
    man, exp = mpmath.mpf(value).man_exp
    return Fraction(man) * Fraction(2) ** exp


def certify_e_trunc(ell: int, x: float) -> bool:
    """E_ell(x) >= e^x for x <= 0, against an outward-rounded upper bound for e^x."""
    if x > 0:
        raise DomainError(f"certification covers x <= 0, got {x}")
    exact = e_trunc_exact(ell, x)
    if x == 0:
        return exact == 1
    # E_ell(x) - e^x is about |x|^{ell+1}/(ell+1)!; carry enough digits to resolve it
    gap = (ell + 1) * math.log10(abs(x)) - math.lgamma(ell + 2) / math.log(10)
    digits = 30 + max(0, int(-gap))
    # mpmath's interval context has no workdps(); set and restore its precision directly
    saved_dps = mpmath.iv.dps
    mpmath.iv.dps = digits
    try:
        upper = mpmath.iv.exp(mpmath.iv.mpf(x)).b
    finally:
        mpmath.iv.dps = saved_dps
    with mpmath.workdps(digits + 10):
        bound = _mpf_fraction(upper)
    return exact >= bound


def truncation_length(beta: float) -> int:
    """ell = 2 ceil(50 beta^{-3/4})"""
    if beta <= 0:
        raise DomainError(f"beta must be positive, got {beta}")
    return 2 * math.ceil(50 * beta ** (-0.75))


def e_trunc_ratio(ell: int, x: float) -> Tuple[float, float]:
    """(e^x/E_ell(x) - 1, e^{-ell}); the first is O(e^{-ell}) for x <= ell/e^2"""
    _check_ell(ell)
    with mpmath.workdps(40):
        total = mpmath.mpf(1)
        term = mpmath.mpf(1)
        for j in range(1, ell + 1):
            term *= mpmath.mpf(x) / j
            total += term
        ratio = mpmath.exp(x) / total - 1
        return float(ratio), float(mpmath.exp(-ell))


def gaussian_heuristic_prediction(lambdas: Mapping[int, float], x: float) -> HeuristicPrediction:
    """Fourth-moment prediction e^{mu + sigma^2/2} from the random model over p <= x."""
    mu_terms, sigma_terms, simple_terms = [], [], []
    for p, lam in sorted(lambdas.items()):
        if p > x:
            break
        square = lam * lam
        mu_terms.append(-(square * square - 4 * square + 4) / (2 * p))
        sigma_terms.append(square * square / p)
        simple_terms.append(2 * (square - 1) / p)
    mu = math.fsum(mu_terms)
    sigma2 = math.fsum(sigma_terms)
    return HeuristicPrediction(
        mu=mu,
        sigma2=sigma2,
        prediction=math.exp(mu + sigma2 / 2),
        simplification=math.exp(math.fsum(simple_terms)),
    )


def techn_factor(lambdas: Mapping[int, float], log_x: float) -> Tuple[float, float]:
    """
    exp(1/2 sum_{p<=x} lambda^4 p^{-1-2/log x} log^2(x/p)/log^2 x)
        * exp(-1/2 sum_{p<=sqrt x} lambda^4 p^{-1-2/log x} log(x/p^2)/log x),
    returned as (value, log value) over the primes available.
    """
    first, second = [], []
    for p, lam in sorted(lambdas.items()):
        log_p = math.log(p)
        if log_p > log_x:
            break
        quartic = lam**4 * p ** (-1 - 2 / log_x)
        first.append(quartic * ((log_x - log_p) / log_x) ** 2)
        if 2 * log_p <= log_x:
            second.append(quartic * (log_x - 2 * log_p) / log_x)
    log_value = (math.fsum(first) - math.fsum(second)) / 2
    return math.exp(log_value), log_value


def sym_side_by_side(lambdas: Mapping[int, float], l_value: float, log_x: float) -> dict:
    """L(1, sym^2 f)^{-2} next to exp(sum_{p<=sqrt x} (2 lambda^2 - 2)/p)"""
    terms = [
        (2 * lam * lam - 2) / p for p, lam in sorted(lambdas.items()) if 2 * math.log(p) <= log_x
    ]
    euler = math.exp(math.fsum(terms))
    inverse_square = 1 / l_value**2
    return {"inverse_l_squared": inverse_square, "prime_exponential": euler, "product": inverse_square * euler}


def sound_margins(k: int, x_values: Sequence[float], log_k: Optional[float] = None, index: int = 0,
                  ncoeffs: Optional[int] = None) -> List[Dict]:
    """
    bound - log L(1/2, f x f x g) for the index-th eigenform f of weight k and every g in
    B_{2k}, with the central values taken from Watson's formula. The O(1) is not included,
    so the sign of a margin is reported, not asserted.
    """
    log_k = math.log(k) if log_k is None else log_k
    result = fourth_moment(k, index, ncoeffs=ncoeffs)
    f = hecke_eigenforms(k, settings.ncoeffs if ncoeffs is None else ncoeffs)[index]
    rows = []
    for entry, row in zip(eigenbasis_spectrum(2 * k, ncoeffs), result.rows):
        log_l = math.log(row.value) if row.value > 0 else -math.inf
        for x in x_values:
            bound = sound_upper(f, entry.form, float(x), log_k).value
            rows.append({
                "k": k,
                "g_index": entry.form.index,
                "x": float(x),
                "x_exponent": round(math.log(x) / math.log(k), 12),
                "bound": bound,
                "log_L": log_l,
                "margin": bound - log_l,
            })
    logger.info(f"Margins for k={k}: {len(rows)} rows, smallest {min(r['margin'] for r in rows):.6g}")
    return rows
