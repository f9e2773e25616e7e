"""
Logging Module
Handles log file and console output for experiment runs
"""

import logging
from pathlib import Path
from typing import Union

LIBRARY_LOGGERS = ("symplectic", "experiments")


def parse_level(level: Union[str, int, None], default: int = logging.INFO) -> int:
    """Accept names like "debug" or numeric levels"""
    if level is None:
        return default
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    return value if isinstance(value, int) else default


def setup_logging(log_file: Path, log_level=logging.INFO):
    """Setup logging configuration"""
    log_file.parent.mkdir(parents=True, exist_ok=True)
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        handlers=[
            logging.FileHandler(log_file, encoding="utf-8"),
            logging.StreamHandler()
        ],
    )

    # Numerical warnings from numpy/scipy go through the same handlers
    logging.captureWarnings(True)

    for name in LIBRARY_LOGGERS:
        logging.getLogger(name).setLevel(log_level)
        logging.getLogger(name).propagate = True


def set_level(log_level: Union[str, int, None]):
    """Apply a --log-level override to the library and front-end loggers"""
    if log_level is None:
        return
    level = parse_level(log_level)
    for name in LIBRARY_LOGGERS:
        logging.getLogger(name).setLevel(level)
