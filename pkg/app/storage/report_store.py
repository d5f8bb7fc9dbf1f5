import json
import logging
import math
import os
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import mpmath
import numpy as np
from pydantic import BaseModel

from ..config import settings

logger = logging.getLogger(__name__)

_TOKEN = "\u0000real{}\u0000"
_TOKEN_PATTERN = re.compile(r'"\\u0000real(\d+)\\u0000"')


def format_real(value: float) -> str:
    if math.isnan(value):
        return '"nan"'
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    return f"{value:.17g}"


def to_jsonable(value: Any, reals: list) -> Any:
    """Plain JSON data; reals are replaced by tokens that are formatted after dumping."""
    if isinstance(value, BaseModel):
        return to_jsonable(value.model_dump(by_alias=True), reals)
    if isinstance(value, dict):
        return {str(key): to_jsonable(item, reals) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item, reals) for item in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(item, reals) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, mpmath.mpf):
        as_float = float(value)
        if math.isinf(as_float) or (as_float == 0 and value != 0):
            return mpmath.nstr(value, 17)
        value = as_float
    if isinstance(value, (float, np.floating)):
        reals.append(float(value))
        return _TOKEN.format(len(reals) - 1)
    return value


def dumps(document: Any) -> str:
    reals: list = []
    data = to_jsonable(document, reals)
    text = json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
    text = _TOKEN_PATTERN.sub(lambda match: format_real(reals[int(match.group(1))]), text)
    return text + "\n"


class ReportStore:
    """JSON reports, one document per file, written atomically"""

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = Path(output_dir) if output_dir is not None else settings.output_path
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def _safe_write_file(self, file_path: Path, text: str):
        temp_file = file_path.with_suffix(".tmp")
        try:
            with open(temp_file, "w", encoding="utf-8") as f:
                f.write(text)
                f.flush()
                os.fsync(f.fileno())
            os.replace(temp_file, file_path)
        except OSError as e:
            logger.error(f"Error writing report {file_path}: {e}")
            raise

    def write(self, name: str, document: Any) -> Path:
        file_path = self.output_dir / f"{name}.json"
        self._safe_write_file(file_path, dumps(document))
        logger.info(f"Saved report {name}: {file_path}")
        return file_path

    def read(self, name: str) -> Dict:
        with open(self.output_dir / f"{name}.json", encoding="utf-8") as f:
            return json.load(f)
