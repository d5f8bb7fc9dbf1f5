import logging
import re
from dataclasses import dataclass
from functools import reduce
from typing import Tuple

from sympy import factorint, isprime

from ..errors import DomainError

logger = logging.getLogger(__name__)

_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


@dataclass(frozen=True)
class PrimeFactorization:
    """A positive integer as increasing (prime, exponent) pairs"""

    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        previous = 1
        for prime, exponent in self.factors:
            if prime <= previous or not isprime(prime):
                logger.error(f"Invalid prime sequence in factorization: {self.factors}")
                raise DomainError(f"primes must be strictly increasing primes, got {self.factors}")
            if exponent < 1:
                raise DomainError(f"exponent of {prime} must be >= 1, got {exponent}")
            previous = prime

    @classmethod
    def from_int(cls, n: int) -> "PrimeFactorization":
        if n < 1:
            raise DomainError(f"cannot factor {n}")
        return cls(tuple(sorted(factorint(n).items())))

    @classmethod
    def from_pairs(cls, pairs) -> "PrimeFactorization":
        """Merges (prime, exponent) pairs in any order; repeated primes add up."""
        merged = {}
        for prime, exponent in pairs:
            if exponent:
                merged[prime] = merged.get(prime, 0) + exponent
        return cls(tuple(sorted(merged.items())))

    @classmethod
    def parse(cls, text: str) -> "PrimeFactorization":
        """Parses '2^4*3^2', '2^4 * 5' or a plain integer '720'."""
        text = text.strip()
        if text.isdigit():
            return cls.from_int(int(text))
        pairs = []
        for chunk in text.split("*"):
            match = _TERM.match(chunk)
            if not match:
                logger.error(f"Cannot parse factorization term {chunk!r}")
                raise DomainError(f"cannot parse factorization {text!r}")
            prime = int(match.group(1))
            if not isprime(prime):
                raise DomainError(f"{prime} is not prime in {text!r}")
            pairs.append((prime, int(match.group(2) or 1)))
        return cls.from_pairs(pairs)

    @property
    def exponents(self) -> Tuple[int, ...]:
        return tuple(exponent for _, exponent in self.factors)

    def value(self) -> int:
        return reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.factors, 1)

    def is_coprime_to(self, other: "PrimeFactorization") -> bool:
        return not {p for p, _ in self.factors} & {p for p, _ in other.factors}

    def __mul__(self, other: "PrimeFactorization") -> "PrimeFactorization":
        return PrimeFactorization.from_pairs(self.factors + other.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
