from .settings import settings, Settings
from .run_config import load_run_config, OracleConfig, PipelineConfig

__all__ = ["settings", "Settings", "load_run_config", "OracleConfig", "PipelineConfig"]
