"""JSON logging for CLI runs and the stub server.

Records go to stderr so report tables printed on stdout stay machine-readable.
Episode context such as the question id is passed through ``extra``
and lands as top-level JSON keys.
"""

import logging
import sys
from typing import Any, Dict

from pythonjsonlogger import jsonlogger

from .exceptions import ConfigError

PACKAGE = "schemabudget"
LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"
QUIET_LOGGERS = ("httpx", "httpcore", "uvicorn.access")


class ToolkitJsonFormatter(jsonlogger.JsonFormatter):
    """JsonFormatter with a short ``component`` key and lower-case ``level``."""

    def add_fields(self, log_record: Dict[str, Any], record: logging.LogRecord, message_dict: Dict[str, Any]) -> None:
        super().add_fields(log_record, record, message_dict)
        log_record["level"] = log_record.pop("levelname", record.levelname).lower()
        name = log_record.pop("name", record.name)
        log_record["component"] = name[len(PACKAGE) + 1:] if name.startswith(PACKAGE + ".") else name


def parse_level(level: str) -> int:
    """Map a level name to its logging constant.

    Raises:
        ConfigError: Unknown level name
    """
    value = logging.getLevelName(level.strip().upper())
    if not isinstance(value, int):
        raise ConfigError(f"unknown log level '{level}'")
    return value


def setup_logging(level: str = "INFO") -> None:
    """Install one JSON handler on the root logger, replacing existing ones."""
    root_logger = logging.getLogger()
    root_logger.setLevel(parse_level(level))

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ToolkitJsonFormatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
    root_logger.addHandler(handler)

    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
