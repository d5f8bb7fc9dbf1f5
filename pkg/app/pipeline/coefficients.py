import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple

import numpy as np

from ..errors import DomainError
from ..satotate import FamilySample
from .partition import PartitionParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CoefficientSystem:
    """
    u_{f,j}(p) and w_{f,j}(p) for j = 0..I (row 0 unused) on the primes p <= x_I for
    which lambda_f(p) is known.
    """

    params: PartitionParams
    primes: Tuple[int, ...]
    lambda_f: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)
    clipped: bool
    prime_cap: int

    @property
    def log_primes(self) -> np.ndarray:
        return np.log(np.asarray(self.primes, dtype=float))

    def window_mask(self, i: int) -> np.ndarray:
        """Primes in (x_{i-1}, x_i]"""
        lo, hi = self.params.log_x(i - 1), self.params.log_x(i)
        logs = self.log_primes
        lower = logs > lo if i > 1 else np.ones(len(self.primes), dtype=bool)
        return lower & (logs <= hi)

    def dyadic_mask(self, m: int) -> np.ndarray:
        primes = np.asarray(self.primes)
        return (primes > 2**m) & (primes <= 2 ** (m + 1))

    def u_square_sum(self, i: int, j: Optional[int] = None) -> float:
        """sum_{x_{i-1} < p <= x_i} u_{f,j}(p)^2 / p, with j = I by default"""
        row = self.u[self.params.I if j is None else j]
        mask = self.window_mask(i)
        return math.fsum(row[mask] ** 2 / np.asarray(self.primes, dtype=float)[mask])


def build_coefficients(params: PartitionParams, lambda_f: Mapping[int, float],
                       prime_cap: Optional[int] = None) -> CoefficientSystem:
    if params.nominal:
        raise DomainError("coefficient systems need log k")
    log_x_top = params.log_x(params.I)
    available = max(lambda_f) if lambda_f else 1
    cap = available if prime_cap is None else min(prime_cap, available)
    clipped = math.log(cap + 1) <= log_x_top

    primes = tuple(sorted(p for p in lambda_f if p <= cap and math.log(p) <= log_x_top))
    lam = np.array([lambda_f[p] for p in primes], dtype=float)
    p = np.asarray(primes, dtype=float)
    logs = np.log(p)

    rows = params.I + 1
    u = np.zeros((rows, len(primes)))
    w = np.zeros((rows, len(primes)))
    square = lam**2
    quartic = lam**4 - 4 * square + 4
    for j in range(1, rows):
        log_x = params.log_x(j)
        inside = logs <= log_x
        u[j] = np.where(inside, square * p ** (-1 / log_x) * (log_x - logs) / log_x, 0.0)
        inside_sq = 2 * logs <= log_x
        w[j] = np.where(inside_sq, quartic / (2 * p ** (2 / log_x)) * (log_x - 2 * logs) / log_x, 0.0)

    if clipped:
        logger.warning(f"Coefficient system clipped to primes <= {cap} (log x_I = {log_x_top:.4g})")
    return CoefficientSystem(params, primes, lam, u, w, clipped, int(cap))


def as_lambda_matrix(source, coeffs: CoefficientSystem) -> np.ndarray:
    """lambda_g(p) on the system's primes: one row per form."""
    if isinstance(source, FamilySample):
        index = {p: n for n, p in enumerate(source.primes)}
        missing = [p for p in coeffs.primes if p not in index]
        if missing:
            raise DomainError(f"family lacks lambda at primes {missing[:5]}")
        return source.values[:, [index[p] for p in coeffs.primes]]
    if hasattr(source, "lambdas_at_primes"):
        source = source.lambdas_at_primes(coeffs.prime_cap)
    if isinstance(source, Mapping):
        try:
            return np.array([[source[p] for p in coeffs.primes]], dtype=float)
        except KeyError as e:
            raise DomainError(f"lambda_g missing at p = {e.args[0]}") from e
    matrix = np.atleast_2d(np.asarray(source, dtype=float))
    if matrix.shape[1] != len(coeffs.primes):
        raise DomainError(f"expected {len(coeffs.primes)} columns, got {matrix.shape[1]}")
    return matrix

