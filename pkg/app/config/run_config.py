"""Flat key=value run configuration files."""
import logging
from pathlib import Path
from typing import Dict, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, ValidationError

from ..errors import ConfigError

logger = logging.getLogger(__name__)


def load_run_config(path) -> Dict[str, str]:
    """Reads a flat key=value file; comments and blank lines are allowed."""
    file_path = Path(path)
    if not file_path.is_file():
        logger.error(f"Config file not found: {file_path}")
        raise ConfigError(f"config file not found: {file_path}")

    for number, line in enumerate(file_path.read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#") and "=" not in stripped:
            logger.error(f"Malformed line {number} in {file_path}: {stripped!r}")
            raise ConfigError(f"{file_path}:{number}: expected key=value, got {stripped!r}")

    values = dotenv_values(file_path)
    return {key.strip().lower(): (value or "").strip() for key, value in values.items()}


class RunConfig(BaseModel):
    """Base for typed subcommand configs; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    @classmethod
    def from_file(cls, path):
        return cls.from_mapping(load_run_config(path))

    @classmethod
    def from_mapping(cls, values: Dict[str, str]):
        try:
            return cls.model_validate(values)
        except ValidationError as e:
            logger.error(f"Invalid {cls.__name__}: {e}")
            raise ConfigError(str(e)) from e


class OracleConfig(RunConfig):
    """Instance of one of the combinatorial lemmas."""

    x1: float = 10
    x2: float = 50
    n: int = 4
    m: int = 5
    big_m: int = 2
    weights: str = "random"
    amplitude: float = 2.0
    constant: float = 1.0
    seed: int = 7
    windows: int = 2
    c_bound: Optional[float] = None


class PipelineConfig(RunConfig):
    """Parameters of the moment pipeline subcommands."""

    log_k: Optional[float] = 100.0
    log_loglog_k: Optional[float] = None
    threshold_exponent: float = 2.0
    chain_constant: Optional[float] = None
    x: float = 1000.0
    forms: int = 10000
    seed: int = 11
    weight: int = 12
    ncoeffs: int = 600
    lambda_f: str = "delta"
    v: Optional[float] = None
