import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

import mpmath
import numpy as np
from sympy import primerange

from ..config import settings
from ..errors import DomainError, PrecisionError
from .qexpansion import QExpansion, cusp_dimension, hecke_operator, miller_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NumericExpansion:
    """Weight and real coefficients a(0..N), e.g. products of eigenforms"""

    weight: int
    coeffs: Tuple

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def coefficients(self, count: int) -> Tuple:
        if count > len(self.coeffs):
            raise DomainError(f"requested {count} coefficients, only {len(self.coeffs)} known")
        return self.coeffs[:count]

    def __mul__(self, other) -> "NumericExpansion":
        length = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = [mpmath.mpf(0)] * length
        for i in range(length):
            if a[i]:
                for j in range(length - i):
                    out[i + j] += a[i] * b[j]
        return NumericExpansion(self.weight + other.weight, tuple(out))


@dataclass(frozen=True, eq=False)
class EigenformData:
    """Normalized Hecke eigenform (a(1) = 1) of level one"""

    weight: int
    index: int
    coeffs: Tuple
    eigenvalue_t2: object
    rational: bool

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def a(self, n: int):
        return self.coeffs[n]

    def coefficients(self, count: int) -> Tuple:
        if count > len(self.coeffs):
            raise DomainError(f"requested {count} coefficients, only {len(self.coeffs)} known")
        return self.coeffs[:count]

    def lam_mp(self, n: int):
        with mpmath.workdps(settings.eigen_dps):
            return mpmath.mpf(self.coeffs[n]) / mpmath.power(n, mpmath.mpf(self.weight - 1) / 2)

    def lam(self, n: int) -> float:
        return float(self.lam_mp(n))

    def theta(self, p: int) -> float:
        """Satake angle: lambda(p) = 2cos(theta_p)."""
        return math.acos(max(-1.0, min(1.0, self.lam(p) / 2)))

    def primes(self, limit: int = None) -> List[int]:
        top = self.N if limit is None else min(limit, self.N)
        return [int(p) for p in primerange(2, top + 1)]

    def lambdas_at_primes(self, limit: int = None) -> Dict[int, float]:
        return {p: self.lam(p) for p in self.primes(limit)}

    def as_expansion(self) -> NumericExpansion:
        with mpmath.workdps(settings.eigen_dps):
            return NumericExpansion(self.weight, tuple(mpmath.mpf(c) for c in self.coeffs))

    def square(self) -> NumericExpansion:
        with mpmath.workdps(settings.eigen_dps):
            return self.as_expansion() * self.as_expansion()


def t2_matrix(basis: Sequence[QExpansion]) -> List[List[int]]:
    """Exact matrix M with T_2 f_i = sum_j M[i][j] f_j on an echelon basis."""
    dim = len(basis)
    if dim and basis[0].N < 2 * dim:
        raise DomainError(f"need N >= {2 * dim} to read off T_2")
    images = [hecke_operator(f, 2) for f in basis]
    return [[image[j + 1] for j in range(dim)] for image in images]


@lru_cache(maxsize=None)
def hecke_eigenforms(k: int, N: int) -> Tuple[EigenformData, ...]:
    basis = miller_basis(k, N)
    dim = len(basis)
    if dim == 0:
        return ()
    if dim == 1:
        f = basis[0]
        return (EigenformData(k, 0, f.coeffs, f[2], True),)

    matrix = t2_matrix(basis)
    with mpmath.workdps(settings.eigen_dps):
        # eigenforms are the eigenvectors of the transpose acting on coordinates
        transpose = mpmath.matrix([[matrix[j][i] for j in range(dim)] for i in range(dim)])
        values, vectors = mpmath.eig(transpose)
        pairs = []
        for col in range(dim):
            value = mpmath.re(values[col])
            vector = [mpmath.re(vectors[row, col]) for row in range(dim)]
            if abs(vector[0]) < mpmath.mpf(10) ** (-settings.eigen_dps // 2):
                raise PrecisionError(f"eigenvector with vanishing a(1) at weight {k}")
            vector = [v / vector[0] for v in vector]
            residual = mpmath.sqrt(sum(
                (sum(transpose[r, c] * vector[c] for c in range(dim)) - value * vector[r]) ** 2
                for r in range(dim)
            ))
            norm = mpmath.sqrt(sum(v**2 for v in vector))
            if residual >= settings.eigen_residual * norm:
                logger.error(f"T_2 eigenvector residual {mpmath.nstr(residual, 5)} at weight {k}")
                raise PrecisionError(f"eigenvector residual too large at weight {k}", est_error=float(residual))
            pairs.append((value, vector))

        pairs.sort(key=lambda pair: pair[0])
        for (v1, _), (v2, _) in zip(pairs, pairs[1:]):
            if v2 - v1 < settings.eigen_separation * max(1, abs(v2)):
                logger.error(f"T_2 eigenvalues cluster at weight {k}: {v1}, {v2}")
                raise PrecisionError(f"eigenvalues of T_2 not separated at weight {k}")

        forms = []
        for index, (value, vector) in enumerate(pairs):
            coeffs = tuple(
                sum(vector[i] * basis[i][n] for i in range(dim)) for n in range(N + 1)
            )
            forms.append(EigenformData(k, index, coeffs, value, False))
    logger.info(f"Weight {k}: {dim} eigenforms, T_2 eigenvalues {[mpmath.nstr(v, 12) for v, _ in pairs]}")
    return tuple(forms)


def deligne_violations(f: EigenformData, limit: int = 1000) -> List[int]:
    """Primes p <= limit with |lambda(p)| > 2."""
    return [p for p in f.primes(limit) if abs(f.lam_mp(p)) > 2]


def multiplicativity_defect(f: EigenformData, limit: int = None) -> float:
    """Largest violation of the Hecke relations among computed indices."""
    top = f.N if limit is None else min(limit, f.N)
    worst = mpmath.mpf(0)
    with mpmath.workdps(settings.eigen_dps):
        lam = [mpmath.mpf(0)] + [f.lam_mp(n) for n in range(1, top + 1)]
        for m in range(2, top + 1):
            for n in range(2, top // m + 1):
                if math.gcd(m, n) == 1:
                    worst = max(worst, abs(lam[m] * lam[n] - lam[m * n]))
        for p in primerange(2, top + 1):
            power = p
            while power * p <= top:
                lower = lam[power // p]
                worst = max(worst, abs(lam[p] * lam[power] - lam[power * p] - lower))
                power *= p
    return float(worst)


def lambda_vector(f: EigenformData, primes: Iterable[int]) -> np.ndarray:
    return np.array([f.lam(p) for p in primes], dtype=float)
