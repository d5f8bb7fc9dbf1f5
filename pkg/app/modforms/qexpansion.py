"""
Exact q-expansions of level-one modular forms and the Miller basis of S_k.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from sympy import divisor_sigma

from ..errors import DomainError

logger = logging.getLogger(__name__)


def _truncated_product(a: Sequence[int], b: Sequence[int], length: int) -> Tuple[int, ...]:
    product = np.convolve(np.asarray(a, dtype=object), np.asarray(b, dtype=object))
    return tuple(int(c) for c in product[:length])


@dataclass(frozen=True)
class QExpansion:
    """Weight and exact integer coefficients a(0..N)"""

    weight: int
    coeffs: Tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_cusp(self) -> bool:
        return self.coeffs[0] == 0

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def coefficients(self, count: int) -> Tuple[int, ...]:
        """a(0..count-1), limited by the truncation."""
        if count > len(self.coeffs):
            raise DomainError(f"requested {count} coefficients, only {len(self.coeffs)} known")
        return self.coeffs[:count]

    def _check_weight(self, other: "QExpansion"):
        if self.weight != other.weight:
            raise DomainError(f"weights differ: {self.weight} vs {other.weight}")

    def __add__(self, other: "QExpansion") -> "QExpansion":
        self._check_weight(other)
        length = min(len(self.coeffs), len(other.coeffs))
        return QExpansion(self.weight, tuple(a + b for a, b in zip(self.coeffs[:length], other.coeffs[:length])))

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self + other.scale(-1)

    def __mul__(self, other: "QExpansion") -> "QExpansion":
        length = min(len(self.coeffs), len(other.coeffs))
        return QExpansion(self.weight + other.weight, _truncated_product(self.coeffs, other.coeffs, length))

    def __pow__(self, exponent: int) -> "QExpansion":
        if exponent < 0:
            raise DomainError("negative powers are not q-expansions")
        result = QExpansion(0, (1,) + (0,) * self.N)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: int) -> "QExpansion":
        return QExpansion(self.weight, tuple(factor * c for c in self.coeffs))

    def exact_div(self, divisor: int) -> "QExpansion":
        quotients = []
        for c in self.coeffs:
            q, r = divmod(c, divisor)
            if r:
                logger.error(f"Coefficient {c} not divisible by {divisor}")
                raise DomainError(f"q-expansion not divisible by {divisor}")
            quotients.append(q)
        return QExpansion(self.weight, tuple(quotients))

    def truncate(self, N: int) -> "QExpansion":
        return QExpansion(self.weight, self.coeffs[: N + 1])


@lru_cache(maxsize=None)
def eisenstein_series(weight: int, N: int) -> QExpansion:
    if weight not in (4, 6):
        raise DomainError(f"eisenstein_series supports weights 4 and 6, got {weight}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    scale, power = (240, 3) if weight == 4 else (-504, 5)
    return QExpansion(weight, (1,) + tuple(scale * int(divisor_sigma(n, power)) for n in range(1, N + 1)))


@lru_cache(maxsize=None)
def delta(N: int) -> QExpansion:
    """(E4^3 - E6^2)/1728"""
    e4, e6 = eisenstein_series(4, N), eisenstein_series(6, N)
    return ((e4**3) - (e6**2)).exact_div(1728)


@lru_cache(maxsize=None)
def delta_qexpansion(N: int) -> QExpansion:
    """q prod(1-q^n)^24 from the sparse series prod(1-q^n)^3 = sum (-1)^m (2m+1) q^{m(m+1)/2}."""
    sparse = []
    m = 0
    while m * (m + 1) // 2 <= N:
        sparse.append((m * (m + 1) // 2, (-1) ** m * (2 * m + 1)))
        m += 1

    series = np.zeros(N, dtype=object)
    series[:] = 0
    series[0] = 1
    for _ in range(8):
        out = np.zeros(N, dtype=object)
        out[:] = 0
        for shift, coefficient in sparse:
            if shift >= N:
                break
            out[shift:] += coefficient * series[: N - shift]
        series = out
    return QExpansion(12, (0,) + tuple(int(c) for c in series))


def cusp_dimension(k: int) -> int:
    if k % 2 or k < 0:
        raise DomainError(f"weight must be even and nonnegative, got {k}")
    if k < 12:
        return 0
    return k // 12 - 1 if k % 12 == 2 else k // 12


@lru_cache(maxsize=None)
def eisenstein_monomial(a: int, b: int, N: int) -> QExpansion:
    """E4^a E6^b"""
    return (eisenstein_series(4, N) ** a) * (eisenstein_series(6, N) ** b)


@lru_cache(maxsize=None)
def miller_basis(k: int, N: int) -> Tuple[QExpansion, ...]:
    if k % 2:
        logger.error(f"miller_basis: odd weight {k}")
        raise DomainError(f"weight must be even, got {k}")
    dim = cusp_dimension(k)
    if dim == 0:
        return ()
    if N < dim + 20:
        raise DomainError(f"need N >= dim S_k + 20 = {dim + 20}, got {N}")

    d = delta(N)
    forms = []
    for i in range(1, dim + 1):
        rest = k - 12 * i
        a, b = (rest // 4, 0) if rest % 4 == 0 else ((rest - 6) // 4, 1)
        forms.append((d**i) * eisenstein_monomial(a, b, N))

    # g_i = q^i + O(q^{i+1}); clear a(j) for i < j <= dim
    reduced = []
    for i, g in enumerate(forms):
        for j in range(i + 1, dim):
            c = g[j + 1]
            if c:
                g = g - forms[j].scale(c)
        reduced.append(g)
    logger.info(f"Miller basis for S_{k}: dimension {dim}, N={N}")
    return tuple(reduced)


def hecke_operator(f: QExpansion, p: int) -> QExpansion:
    """T_p on a weight-k q-expansion, valid up to floor(N/p)."""
    top = f.N // p
    scale = p ** (f.weight - 1)
    return QExpansion(
        f.weight,
        tuple(f[n * p] + (scale * f[n // p] if n % p == 0 else 0) for n in range(top + 1)),
    )
