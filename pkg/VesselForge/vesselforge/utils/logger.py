# -*- coding: utf-8 -*-
"""Package logger set-up driven by the ``VESSELFORGE_LOG`` environment variable."""

import logging
import os
import sys
from typing import Optional, Union

LOG_ENV = "VESSELFORGE_LOG"
ROOT_NAME = "vesselforge"
LOG_FORMAT = "[%(asctime)s] [%(name)s/%(levelname)s] %(message)s"


def _level_from(value: Union[str, int, None], default: int) -> int:
    if value is None or value == "":
        return default
    if isinstance(value, int):
        return value
    value = value.strip()
    if value.isdigit():
        return int(value)
    level = logging.getLevelName(value.upper())
    return level if isinstance(level, int) else default


def setup_logger(default_level: Union[str, int] = logging.WARNING) -> logging.Logger:
    """Configure the package root logger once and return it.

    The ``VESSELFORGE_LOG`` environment variable, when set, wins over
    ``default_level``.
    """
    logger = logging.getLogger(ROOT_NAME)
    level = _level_from(os.environ.get(LOG_ENV), _level_from(default_level, logging.WARNING))
    logger.setLevel(level)
    if not any(getattr(h, "_vesselforge", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt="%H:%M:%S"))
        handler._vesselforge = True
        logger.addHandler(handler)
        logger.propagate = False
    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Child logger of the package root, e.g. ``get_logger("fitting")``."""
    if not name:
        return logging.getLogger(ROOT_NAME)
    if name.startswith(ROOT_NAME):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_NAME}.{name}")
