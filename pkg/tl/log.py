"""包级日志器。

所有模块统一 ``from .log import logger``，命令行入口负责调用 ``setup_logging``。
"""

from __future__ import annotations

import logging
import sys
from typing import TextIO

logger = logging.getLogger("graphcodes")

_LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"


def setup_logging(level: str | int = "INFO", stream: TextIO | None = None) -> None:
    """配置包级日志输出（重复调用只替换 handler，不会叠加）"""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO

    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(_LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
