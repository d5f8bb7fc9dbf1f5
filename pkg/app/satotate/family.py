import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
from sympy import primerange

from ..errors import DomainError
from ..scheduler import TaskRunner
from .model import SAMPLER_ID, make_rng, sample_lambdas

logger = logging.getLogger(__name__)

CHUNK_FORMS = 4096


@dataclass(frozen=True, eq=False)
class FamilySample:
    """Synthetic family: rows are forms, columns are primes <= x"""

    x: float
    primes: Tuple[int, ...]
    values: np.ndarray = field(repr=False)
    seed: int
    sampler_id: str = SAMPLER_ID

    @property
    def n_forms(self) -> int:
        return self.values.shape[0]

    def lambda_squares(self) -> np.ndarray:
        """lambda_g(p^2) = lambda_g(p)^2 - 1"""
        return self.values**2 - 1.0

    def column(self, p: int) -> np.ndarray:
        return self.values[:, self.primes.index(p)]

    def metadata(self) -> Dict:
        return {
            "seed": self.seed,
            "x": self.x,
            "n_forms": self.n_forms,
            "n_primes": len(self.primes),
            "sampler_id": self.sampler_id,
        }


def primes_up_to(x: float) -> Tuple[int, ...]:
    return tuple(int(p) for p in primerange(2, math.floor(x) + 1))


def sample_family(x: float, n_forms: int, seed: int, threads: Optional[int] = None) -> FamilySample:
    if x < 2:
        logger.error(f"sample_family: x={x} < 2")
        raise DomainError(f"x must be >= 2, got {x}")
    if n_forms < 1:
        raise DomainError(f"n_forms must be >= 1, got {n_forms}")

    primes = primes_up_to(x)
    logger.info(f"Sampling {n_forms} forms over {len(primes)} primes (seed {seed})...")
    chunks = [(start, min(start + CHUNK_FORMS, n_forms)) for start in range(0, n_forms, CHUNK_FORMS)]

    def draw(chunk):
        start, stop = chunk
        rng = make_rng(seed, start // CHUNK_FORMS)
        return sample_lambdas(rng, (stop - start) * len(primes)).reshape(stop - start, len(primes))

    blocks = TaskRunner(threads).map_ordered(draw, chunks)
    values = np.vstack(blocks)
    logger.debug(f"Sampling done in {len(chunks)} chunks")
    return FamilySample(x=float(x), primes=primes, values=values, seed=seed)


def constant_family(primes, values, n_forms: int = 1, seed: int = 0) -> FamilySample:
    """Deterministic family with the given lambda(p) on every row."""
    row = np.asarray(values, dtype=float)
    matrix = np.tile(row, (n_forms, 1))
    return FamilySample(x=float(max(primes)) if primes else 2.0, primes=tuple(primes), values=matrix,
                        seed=seed, sampler_id="constant")
