import logging
import math
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

import pandas as pd

from ..config import settings

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"

BOUND_COLUMNS = ["j", "beta_j", "log_beta_j", "term", "log_term", "pass"]
MARGIN_COLUMNS = ["k", "g_index", "x", "x_exponent", "bound", "log_L", "margin"]
LVALUE_COLUMNS = ["k", "g_index", "value", "est_error"]


class TableWriter:
    """CSV tables with a header row"""

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = Path(output_dir) if output_dir is not None else settings.output_path
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def frame(self, rows: Iterable[Dict], columns: Sequence[str]) -> pd.DataFrame:
        return pd.DataFrame(list(rows), columns=list(columns))

    def write(self, name: str, rows: Iterable[Dict], columns: Sequence[str]) -> Path:
        df = self.frame(rows, columns)
        file_path = self.output_dir / f"{name}.csv"
        df.to_csv(file_path, index=False, float_format=FLOAT_FORMAT, encoding="utf-8", lineterminator="\n")
        logger.info(f"Generated CSV: {file_path.name}, {len(df)} rows, {file_path.stat().st_size} bytes")
        return file_path

    def write_family(self, name: str, family) -> Path:
        """One row per form, one column per prime"""
        df = pd.DataFrame(family.values, columns=[str(p) for p in family.primes])
        file_path = self.output_dir / f"{name}.csv"
        df.to_csv(file_path, index=False, float_format=FLOAT_FORMAT, encoding="utf-8", lineterminator="\n")
        logger.info(f"Family CSV: {file_path.name}, {family.n_forms} forms x {len(family.primes)} primes")
        return file_path


def chain_rows(report) -> List[Dict]:
    """Bound table rows from a chain report; term and log_term are t_j and log|t_j|."""
    rows = []
    for step in report.steps:
        rows.append({
            "j": step.j,
            "beta_j": math.exp(step.log_beta_j),
            "log_beta_j": step.log_beta_j,
            "term": step.t_j,
            "log_term": step.log_abs_t_j,
            "pass": step.passes,
        })
    return rows
