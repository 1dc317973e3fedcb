"""
Logging Configuration
JSON records on stderr (stdout carries reports), optional log file,
and a context manager that tags a sweep with its (n, k) fields.
"""

import logging
import sys
import time
from pathlib import Path
from typing import Optional

import structlog
from pythonjsonlogger import jsonlogger

JSON_FIELDS = "%(timestamp)s %(level)s %(name)s %(message)s"
PLAIN_FORMAT = "%(levelname)s %(name)s: %(message)s"


def _formatter(json_format: bool) -> logging.Formatter:
    if not json_format:
        return logging.Formatter(PLAIN_FORMAT)
    return jsonlogger.JsonFormatter(
        JSON_FIELDS,
        rename_fields={"level": "severity", "timestamp": "@timestamp"},
    )


def setup_logging(log_level: str = "WARNING", log_file: Optional[str] = None, json_format: bool = True):
    """
    Configure the root logger

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL (unknown names give WARNING)
        log_file: Optional log file path; parent directories are created
        json_format: JSON records instead of plain text lines
    """
    level = getattr(logging, log_level.upper(), logging.WARNING)
    formatter = _formatter(json_format)

    root = logging.getLogger()
    root.setLevel(level)
    root.handlers.clear()

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, encoding="utf-8"))

    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)
        root.addHandler(handler)

    # structlog loggers route through the same stdlib handlers
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.format_exc_info,
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


class LoggingContext:
    """
    Wrap a sweep: a failure is logged at ERROR with the given fields and
    re-raised; completion is logged at DEBUG with the elapsed time
    """

    def __init__(self, logger: logging.Logger, **fields):
        self.logger = logger
        self.extra = fields
        self._started = 0.0

    def __enter__(self):
        self._started = time.perf_counter()
        return self.logger

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type:
            self.logger.error(f"Sweep failed: {exc_val}", extra=self.extra, exc_info=True)
            return False
        elapsed = time.perf_counter() - self._started
        self.logger.debug(f"Sweep finished in {elapsed:.3f}s", extra=self.extra)
        return False
