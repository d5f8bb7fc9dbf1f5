"""Dirichlet polynomials G_(i,j)(g) over prime windows and P_m(g) over dyadic prime blocks."""
import logging

import numpy as np

from ..errors import DomainError
from .coefficients import CoefficientSystem, as_lambda_matrix

logger = logging.getLogger(__name__)


def g_poly(g, i: int, j: int, coeffs: CoefficientSystem) -> np.ndarray:
    """G_(i,j)(g) = sum_{x_{i-1} < p <= x_i} u_{f,j}(p) lambda_g(p) / sqrt(p), one value per form."""
    I = coeffs.params.I
    if not 1 <= i <= j <= I:
        logger.error(f"g_poly: need 1 <= i <= j <= {I}, got ({i}, {j})")
        raise DomainError(f"need 1 <= i <= j <= I = {I}, got ({i}, {j})")
    lam = as_lambda_matrix(g, coeffs)
    mask = coeffs.window_mask(i)
    weights = coeffs.u[j][mask] / np.sqrt(np.asarray(coeffs.primes, dtype=float)[mask])
    return lam[:, mask] @ weights


def p_poly(g, m: int, coeffs: CoefficientSystem) -> np.ndarray:
    """P_m(g) = sum_{2^m < p <= 2^{m+1}} w_{f,I}(p) (lambda_g(p)^2 - 1) / p"""
    if m < 0 or (m + 1) * np.log(2) > coeffs.params.log_x(coeffs.params.I):
        raise DomainError(f"P_m needs 0 <= m and 2^(m+1) <= x_I, got m = {m}")
    lam = as_lambda_matrix(g, coeffs)
    mask = coeffs.dyadic_mask(m)
    weights = coeffs.w[coeffs.params.I][mask] / np.asarray(coeffs.primes, dtype=float)[mask]
    return (lam[:, mask] ** 2 - 1.0) @ weights
