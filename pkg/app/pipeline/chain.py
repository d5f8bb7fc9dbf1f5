"""
Log-space validators for the arithmetic that closes the fourth-moment bound.

Quantities such as e^{-4/beta_j} or (log k)^{10^30} are kept as their logarithms;
values whose logarithm itself overflows a float are carried as mpmath numbers.
"""
import logging
import math
from typing import List, Optional, Tuple, Union

import mpmath
import numpy as np
from pydantic import BaseModel, computed_field

from ..config import settings
from ..errors import DomainError
from .classify import ClassificationReport
from .coefficients import CoefficientSystem
from .partition import LOG20, PartitionParams

logger = logging.getLogger(__name__)

Number = Union[float, str]
MARKOV_REGIME = 1e30


def _num(value) -> Number:
    """float when representable, otherwise a 17-digit decimal string"""
    as_float = float(value)
    if math.isinf(as_float) or (as_float == 0 and value != 0):
        return mpmath.nstr(value, 17)
    return as_float


def _chain_constant(C: Optional[float]) -> float:
    return settings.chain_constant if C is None else C


class ChainStep(BaseModel):
    j: int
    log_beta_j: float
    log_beta_next: float
    a_j: float
    log_abs_t_j: float
    passes: bool

    @computed_field
    @property
    def t_j(self) -> Number:
        with mpmath.workdps(30):
            return mpmath.nstr(self.a_j * mpmath.exp(-mpmath.mpf(self.log_beta_j)), 17)

    @computed_field
    @property
    def bound_exponent(self) -> Number:
        """-4/beta_j"""
        with mpmath.workdps(30):
            return _num(-4 * mpmath.exp(-mpmath.mpf(self.log_beta_j)))


class ChainReport(BaseModel):
    C: float
    threshold_exponent: float
    I: int
    steps: List[ChainStep]
    failing: List[int]
    all_pass: bool
    log_geometric_sum: Optional[Number]
    min_threshold_exponent: float


def _step_passes(log_beta_next: float, C: float) -> bool:
    return 6 + log_beta_next / (80 * C) <= -4


def minimal_threshold_exponent(log_loglog_k: float, C: Optional[float] = None) -> float:
    """
    Infimum of the thresholds T at which every step passes: -log beta_i for the last
    beta_i on the grid whose step still holds, since any T above it keeps I <= i.
    The step predicate is monotone in i, so the grid is bisected.
    """
    C = _chain_constant(C)

    def log_beta(i: int) -> float:
        return (i - 1) * LOG20 - 2 * log_loglog_k

    if not _step_passes(log_beta(1), C):
        return -log_beta(1)
    lo, hi = 1, max(2, math.floor(2 * log_loglog_k / LOG20) + 2)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _step_passes(log_beta(mid), C):
            lo = mid
        else:
            hi = mid
    return -log_beta(lo)


def _log_geometric_sum(params: PartitionParams) -> Optional[Number]:
    """log sum_j e^{-4/beta_j}; terms more than 60 below the largest are dropped"""
    if params.I < 2:
        return None
    with mpmath.workdps(30):
        terms = []
        for j in range(params.I - 1, 0, -1):
            exponent = -4 * mpmath.exp(-mpmath.mpf(params.log_beta_at(j)))
            if terms and exponent - terms[0] < -60:
                break
            terms.append(exponent)
        top = terms[0]
        return _num(top + mpmath.log(mpmath.fsum(mpmath.exp(e - top) for e in terms)))


def chain_validator(params: PartitionParams, C: Optional[float] = None) -> ChainReport:
    """
    For 1 <= j <= I-1: t_j = 6/beta_j + log(beta_{j+1})/(80 C beta_j) against -4/beta_j.
    Dividing by 1/beta_j the step holds iff 6 + log(beta_{j+1})/(80 C) <= -4.
    """
    C = _chain_constant(C)
    steps = []
    for j in range(1, params.I):
        log_beta = params.log_beta_at(j)
        log_next = params.log_beta_at(j + 1)
        a_j = 6 + log_next / (80 * C)
        steps.append(ChainStep(
            j=j,
            log_beta_j=log_beta,
            log_beta_next=log_next,
            a_j=a_j,
            log_abs_t_j=math.log(abs(a_j)) - log_beta if a_j else -math.inf,
            passes=_step_passes(log_next, C),
        ))

    failing = [step.j for step in steps if not step.passes]
    report = ChainReport(
        C=C,
        threshold_exponent=params.threshold_exponent,
        I=params.I,
        steps=steps,
        failing=failing,
        all_pass=not failing,
        log_geometric_sum=_log_geometric_sum(params),
        min_threshold_exponent=minimal_threshold_exponent(params.log_loglog_k, C),
    )
    if failing:
        logger.warning(f"Chain validator: {len(failing)} of {len(steps)} steps fail at T = {params.threshold_exponent}")
    else:
        logger.info(f"Chain validator: all {len(steps)} steps pass at T = {params.threshold_exponent}")
    return report


class MarkovReport(BaseModel):
    V: float
    n: int
    log_x: float
    log_bound: float
    target: float
    in_regime: bool
    passes: Optional[bool]
    admissible: bool


def markov_moment_bound(V: float, log_k: float) -> MarkovReport:
    """
    log of (2^8 n loglog k/(V^2 e))^n at n = floor(V/20), x = k^{16/V}; must be <= -3V
    once V >= 10^30 loglog k. Below that regime the value is only reported.
    """
    if V <= 0 or log_k <= math.e:
        raise DomainError(f"need V > 0 and log k > e, got V={V}, log k={log_k}")
    loglog = math.log(log_k)
    n = math.floor(V / 20)
    if n < 1:
        raise DomainError(f"V = {V} gives no admissible moment")
    log_bound = n * (8 * math.log(2) + math.log(n) + math.log(loglog) - 2 * math.log(V) - 1)
    in_regime = V >= MARKOV_REGIME * loglog
    log_x = 16 * log_k / V
    admissible = 2 * n * log_x <= 2 * log_k - math.log(1e4)
    target = -3 * V
    if not in_regime:
        logger.info(f"Markov bound at V={V:.3g} is below the regime V >= 1e30 loglog k; report only")
    return MarkovReport(
        V=V,
        n=n,
        log_x=log_x,
        log_bound=log_bound,
        target=target,
        in_regime=in_regime,
        passes=(log_bound <= target) if in_regime else None,
        admissible=admissible,
    )


def markov_comparison() -> Tuple[float, float, bool]:
    """log(2^8/(20 10^30 e)) against -3*20"""
    value = 8 * math.log(2) - math.log(20) - 30 * math.log(10) - 1
    return value, -60.0, value < -60.0


def primes_squared_tail_bound(m: int, C: Optional[float] = None, M: Optional[int] = None) -> float:
    """log of (log 2^{m+1})^{12} (2M)!/M! (72 C^2 2^{m/5}/2^m)^M, M = floor(2^{3m/4}) unless given"""
    C = _chain_constant(C)
    M = math.floor(2 ** (0.75 * m)) if M is None else M
    if m < 0 or M < 0:
        raise DomainError(f"need m, M >= 0, got ({m}, {M})")
    log_ratio = math.log(72 * C**2) + (m / 5 - m) * math.log(2)
    return (
        12 * math.log((m + 1) * math.log(2))
        + math.lgamma(2 * M + 1)
        - math.lgamma(M + 1)
        + M * log_ratio
    )


def main_contribution_factor(m: int, M: Optional[int] = None) -> Tuple[float, float, bool]:
    """log of (2^{m/5} M 1152 2^{-m}/e)^M against -2^{3m/4}"""
    M = math.floor(2 ** (0.75 * m)) if M is None else M
    if M < 1:
        raise DomainError(f"need M >= 1, got {M}")
    value = M * ((m / 5 - m) * math.log(2) + math.log(M) + math.log(1152) - 1)
    target = -(2 ** (0.75 * m))
    return value, target, value <= target


def integer_size_check(params: PartitionParams) -> Tuple[float, float, bool]:
    """k^{400 beta_I^{1/4}} <= k^2/10^4, compared per unit of log k"""
    lhs = 400 * math.exp(params.log_beta_at(params.I) / 4)
    rhs = 2.0 if params.log_k is None else 2 - math.log(1e4) / params.log_k
    return lhs, rhs, lhs <= rhs


class ExceptionalMeasure(BaseModel):
    L: Number
    log_bound: Number
    target: Number
    passes: bool
    degenerate: bool
    exceptional_exponents: List[Number]


def exceptional_measure_bound(params: PartitionParams, C: Optional[float] = None,
                              sum_lambda4: Optional[float] = None) -> ExceptionalMeasure:
    """
    log of I (beta_1^{3/2} 2L/e sum_{p<=x_1} lambda_f^4/p)^L with L = floor(1/(C beta_1)),
    against -(loglog k)^2/C; sum_lambda4 defaults to its bound 16 loglog k.
    Also the exponents (4 C beta_{j+1})^{-1} log beta_{j+1} for 1 <= j <= I-1.
    """
    C = _chain_constant(C)
    with mpmath.workdps(30):
        log_beta1 = mpmath.mpf(params.log_beta_at(1))
        loglog = mpmath.exp(params.log_loglog_k)
        total = 16 * loglog if sum_lambda4 is None else mpmath.mpf(sum_lambda4)
        L = mpmath.floor(mpmath.exp(-log_beta1) / C)
        degenerate = L < 1
        if degenerate:
            logger.warning("floor(1/(C beta_1)) vanishes; evaluating at L = 1")
            L = mpmath.mpf(1)
        log_bound = mpmath.log(params.I) + L * (
            mpmath.mpf(1.5) * log_beta1 + mpmath.log(2 * L / mpmath.e) + mpmath.log(total)
        )
        target = -loglog**2 / C
        exponents = [
            _num(mpmath.exp(-mpmath.mpf(params.log_beta_at(j + 1))) / (4 * C) * params.log_beta_at(j + 1))
            for j in range(1, params.I)
        ]
        return ExceptionalMeasure(
            L=_num(L),
            log_bound=_num(log_bound),
            target=_num(target),
            passes=bool(log_bound <= target),
            degenerate=degenerate,
            exceptional_exponents=exponents,
        )


def final_bound_exponent(loglog_k: float, C: Optional[float] = None) -> Tuple[float, bool]:
    """log of e^{-(loglog k)^2/(2C)} (log k)^{(10^30+4)/2}; negative once loglog k exceeds C(10^30+4)"""
    C = _chain_constant(C)
    value = -(loglog_k**2) / (2 * C) + (1e30 + 4) / 2 * loglog_k
    return value, value < 0


def generic_exponential_moment(report: ClassificationReport, coeffs: CoefficientSystem, i: int) -> Tuple[float, float]:
    """
    (sum over the good set of exp(G_(i,I)) divided by the family size, exp(1/2 sum u_{f,I}^2/p))
    over the window (x_{i-1}, x_i].
    """
    values = report.g_value(i, coeffs.params.I)
    good = report.in_good
    n_forms = len(values)
    empirical = math.fsum(np.exp(values[good])) / n_forms
    predicted = math.exp(coeffs.u_square_sum(i) / 2)
    logger.info(f"Exponential moment on window {i}: empirical {empirical:.6g}, predicted {predicted:.6g}")
    return empirical, predicted
