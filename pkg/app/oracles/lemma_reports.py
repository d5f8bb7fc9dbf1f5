import logging
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from ..config.run_config import OracleConfig
from ..errors import ConfigError
from ..satotate import make_rng
from .combinato import (
    as_fraction,
    combinato2_bound,
    combinato2_sum,
    combinato_bound,
    combinato_sum,
    dyadic_primes,
    gaussian_main_term,
    gaussian_sum,
    window_primes,
)

logger = logging.getLogger(__name__)

LEMMAS = ("combinato", "combinato2", "gaussian")


class LemmaReport(BaseModel):
    """Outcome of one finite instance of a combinatorial lemma"""

    model_config = ConfigDict(populate_by_name=True)

    lemma: str
    config: Dict[str, Any]
    lhs: float
    bound: float
    slack: float
    ratio: float
    passed: bool = Field(alias="pass")
    lhs_exact: str
    bound_exact: str

    def to_record(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True)


def rational_weights(primes, config: OracleConfig, stream: int = 0) -> Dict[int, Fraction]:
    """Weights on primes: constant, or seeded random rationals in [-amplitude, amplitude]."""
    if config.weights == "constant":
        return {p: as_fraction(config.constant) for p in primes}
    if config.weights != "random":
        raise ConfigError(f"unknown weights mode {config.weights!r}")
    scale = 1000
    top = int(round(config.amplitude * scale))
    rng = make_rng(config.seed, stream)
    draws = rng.integers(-top, top, size=len(primes), endpoint=True)
    return {p: Fraction(int(d), scale) for p, d in zip(primes, draws)}


def _split_windows(config: OracleConfig):
    step = (config.x2 - config.x1) / config.windows
    return [(config.x1 + i * step, config.x1 + (i + 1) * step) for i in range(config.windows)]


def _report(lemma: str, config: OracleConfig, lhs: Fraction, bound: Fraction) -> LemmaReport:
    slack = bound - abs(lhs)
    ratio = float(abs(lhs) / bound) if bound else (0.0 if lhs == 0 else float("inf"))
    return LemmaReport(
        lemma=lemma,
        config=config.model_dump(),
        lhs=float(lhs),
        bound=float(bound),
        slack=float(slack),
        ratio=ratio,
        passed=abs(lhs) <= bound,
        lhs_exact=str(lhs),
        bound_exact=str(bound),
    )


def verify_lemma_instance(lemma_id: str, config: Union[OracleConfig, Dict[str, Any], None] = None,
                          strategy: str = "auto") -> LemmaReport:
    if lemma_id not in LEMMAS:
        logger.error(f"Unknown lemma id {lemma_id!r}")
        raise ConfigError(f"unknown lemma id {lemma_id!r}; expected one of {LEMMAS}")
    if config is None:
        config = OracleConfig()
    elif not isinstance(config, OracleConfig):
        config = OracleConfig.from_mapping(config)

    if lemma_id == "combinato":
        window = (config.x1, config.x2)
        u = rational_weights(window_primes(window), config)
        lhs = combinato_sum(window, u, config.n, strategy)
        bound = combinato_bound(window, u, config.n) if config.n % 2 == 0 else Fraction(0)
        report = _report(lemma_id, config, lhs, bound)

    elif lemma_id == "combinato2":
        w = rational_weights(dyadic_primes(config.m), config)
        c = config.c_bound if config.c_bound is not None else max((abs(v) for v in w.values()), default=Fraction(0))
        lhs = combinato2_sum(config.m, w, config.big_m, strategy)
        bound = combinato2_bound(config.m, c, config.big_m)
        report = _report(lemma_id, config, lhs, bound)

    else:
        windows = []
        for index, window in enumerate(_split_windows(config)):
            windows.append((window, rational_weights(window_primes(window), config, stream=index), config.n))
        w = rational_weights(dyadic_primes(config.m), config, stream=len(windows))
        c = config.c_bound if config.c_bound is not None else max((abs(v) for v in w.values()), default=Fraction(0))
        lhs = gaussian_sum(windows, (config.m, w, config.big_m))
        bound = gaussian_main_term(windows, (config.m, c, config.big_m))
        report = _report(lemma_id, config, lhs, bound)

    log = logger.info if report.passed else logger.warning
    log(f"{lemma_id}: lhs={report.lhs:.6g} bound={report.bound:.6g} pass={report.passed}")
    return report
