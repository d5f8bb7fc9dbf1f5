import math
from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Lab configuration read from LAB_* environment variables and .env"""

    model_config = SettingsConfigDict(
        env_prefix="LAB_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Output
    output_dir: str = "reports"

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Combinatorics caps
    max_power: int = 64
    catalan_cap: int = 64
    moment_power_cap: int = 40
    exp_moment_cap: float = 50.0
    direct_enumeration_limit: int = 10**8

    # Sato-Tate quadrature
    quadrature_tolerance: float = 1e-12
    quadrature_dps: int = 30

    # Eigenforms
    eigen_dps: int = 50
    eigen_residual: float = 1e-20
    eigen_separation: float = 1e-12

    # Fundamental-domain quadrature
    petersson_tolerance: float = 1e-10
    quad_depth: int = 3
    quad_nodes: int = 12
    truncation_height: float = 10.0

    # q-expansion length for eigenbases
    ncoeffs: int = 120

    # Petersson formula
    bessel_tolerance: float = 1e-15
    kloosterman_tolerance: float = 1e-6
    c_max: int = 200

    # Pipeline
    threshold_exponent: float = 2.0
    loose_threshold_exponent: float = 1e4
    strict_threshold_exponent: float = 1e5
    chain_constant: float = 2**5 * 10 / math.e

    # Monte Carlo
    mc_forms: int = 10**6
    mc_repetitions: int = 100
    seed: int = 20240601

    # Worker pool (0 means all cores)
    threads: int = 0

    @property
    def output_path(self) -> Path:
        """Directory receiving CSV tables and JSON reports"""
        return Path(self.output_dir)

    def create_directories(self) -> Path:
        """Creates the output directory"""
        self.output_path.mkdir(parents=True, exist_ok=True)
        return self.output_path


settings = Settings()
