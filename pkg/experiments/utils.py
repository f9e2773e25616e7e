"""
Utilities Module
Output helpers for experiment runs
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
import pandas as pd

logger = logging.getLogger("experiments")


def ensure_dir(path: Union[str, Path]) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def scale_label(scale: float) -> str:
    """1.0 -> "1", 0.1 -> "0.1", 0.001 -> "0.001" """
    return f"{scale:g}"


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else "inf" if value > 0 else "-inf" if value < 0 else "nan"
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def write_json(path: Union[str, Path], data: Dict[str, Any]) -> Path:
    """UTF-8 JSON with indent=2, keys in insertion order"""
    path = Path(path)
    ensure_dir(path.parent)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(_jsonable(data), f, indent=2, ensure_ascii=False)
        f.write("\n")
    logger.info(f"📄 Wrote {path}")
    return path


def write_rows_csv(path: Union[str, Path], rows: List[Dict[str, Any]], float_format: str = "%.10g") -> Path:
    """One CSV row per dict, columns from the first row"""
    path = Path(path)
    ensure_dir(path.parent)
    frame = pd.DataFrame(rows)
    frame.to_csv(path, index=False, float_format=float_format)
    logger.info(f"📄 Wrote {path} ({len(rows)} rows)")
    return path


def write_columns_csv(path: Union[str, Path], columns: Dict[str, Any], float_format: str = "%.17g") -> Path:
    """CSV from named columns of equal length"""
    path = Path(path)
    ensure_dir(path.parent)
    pd.DataFrame(columns).to_csv(path, index=False, float_format=float_format)
    logger.info(f"📄 Wrote {path}")
    return path
