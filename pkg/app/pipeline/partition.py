"""
The beta-partition of [1, k]: beta_0 = 0, beta_i = 20^{i-1}/(loglog k)^2 and
I = 1 + max{i : beta_i <= e^{-T}} for a threshold exponent T.
"""
import logging
import math
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from ..config import settings
from ..errors import DomainError

logger = logging.getLogger(__name__)

LOG20 = math.log(20)


class PartitionParams(BaseModel):
    """
    Scales x_j = k^{beta_j}. k is held through log k, or through logloglog k alone
    when k is too large for log k to be a float (nominal mode, log_k is None).
    """

    model_config = ConfigDict(frozen=True)

    log_k: Optional[float]
    log_loglog_k: float
    threshold_exponent: float
    I: int
    log_beta: Tuple[float, ...]

    @classmethod
    def from_log_loglog(cls, log_loglog_k: float, threshold_exponent: Optional[float] = None) -> "PartitionParams":
        threshold = settings.threshold_exponent if threshold_exponent is None else threshold_exponent
        if log_loglog_k <= 0:
            logger.error(f"logloglog k = {log_loglog_k} is not positive")
            raise DomainError("need loglog k > 1")
        room = 2 * log_loglog_k - threshold
        i_max = math.floor(room / LOG20) + 1 if room >= 0 else 0
        I = 1 + i_max
        log_beta = tuple((i - 1) * LOG20 - 2 * log_loglog_k for i in range(1, I + 1))
        return cls(
            log_k=None,
            log_loglog_k=log_loglog_k,
            threshold_exponent=threshold,
            I=I,
            log_beta=log_beta,
        )

    @property
    def loglog_k(self) -> float:
        return math.exp(self.log_loglog_k)

    @property
    def nominal(self) -> bool:
        return self.log_k is None

    @property
    def beta(self) -> List[float]:
        """beta_0 .. beta_I; beta_0 = 0"""
        if self.log_k is not None:
            ll2 = math.log(self.log_k) ** 2
            return [0.0] + [20 ** (i - 1) / ll2 for i in range(1, self.I + 1)]
        return [0.0] + [math.exp(value) for value in self.log_beta]

    def beta_at(self, i: int) -> float:
        return self.beta[i]

    def log_beta_at(self, i: int) -> float:
        if not 1 <= i <= self.I:
            raise DomainError(f"log beta_{i} undefined; need 1 <= i <= {self.I}")
        return self.log_beta[i - 1]

    def threshold(self, i: int) -> float:
        """beta_i^{-3/4}"""
        return math.exp(-0.75 * self.log_beta_at(i))

    def log_x(self, j: int) -> float:
        """log x_j = beta_j log k"""
        if self.log_k is None:
            logger.error("log x_j requested in nominal mode")
            raise DomainError("x_j is not representable without log k")
        if j == 0:
            return 0.0
        return self.beta_at(j) * self.log_k

    def windows(self) -> List[Tuple[float, float]]:
        """(log x_{i-1}, log x_i] for i = 1..I"""
        return [(self.log_x(i - 1), self.log_x(i)) for i in range(1, self.I + 1)]

    def summary(self) -> dict:
        return {
            "log_k": self.log_k,
            "log_loglog_k": self.log_loglog_k,
            "threshold_exponent": self.threshold_exponent,
            "I": self.I,
            "log_beta": list(self.log_beta),
            "log_x": [self.log_x(j) for j in range(self.I + 1)] if self.log_k is not None else None,
        }


def partition_params(log_k: float, threshold_exponent: Optional[float] = None) -> PartitionParams:
    if log_k <= math.e:
        logger.error(f"partition_params: log k = {log_k} <= e")
        raise DomainError(f"log k must exceed e so that loglog k > 1, got {log_k}")
    loglog = math.log(log_k)
    params = PartitionParams.from_log_loglog(math.log(loglog), threshold_exponent)
    params = params.model_copy(update={"log_k": float(log_k)})
    logger.info(
        f"Partition for log k = {log_k}: I = {params.I}, threshold e^-{params.threshold_exponent}"
    )
    return params
