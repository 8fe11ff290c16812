"""
Logging Setup
Routes standard logging into loguru sinks; stderr for the console, rotating files on request
"""
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Dict, Optional

from loguru import logger as loguru_logger

from settings import settings


# LogRecord attributes that are not user context
_RECORD_ATTRIBUTES = set(vars(logging.makeLogRecord({}))) | {"message", "asctime", "taskName"}

TEXT_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<magenta>{extra[run_id]}</magenta> | <cyan>{name}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)


class InterceptHandler(logging.Handler):
    """Forward standard logging records to loguru, keeping `extra=` fields"""

    def emit(self, record: logging.LogRecord) -> None:  # pragma: no cover - direct call
        try:
            level = loguru_logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        frame, depth = logging.currentframe(), 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        extra = {k: v for k, v in vars(record).items() if k not in _RECORD_ATTRIBUTES and not k.startswith("_")}
        loguru_logger.opt(depth=depth, exception=record.exc_info).bind(**extra).log(level, record.getMessage())


def json_default(obj: Any) -> Any:
    """Numbers that json cannot encode on its own"""
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Exception):
        return {"error": str(obj), "type": type(obj).__name__}
    if hasattr(obj, "tolist"):
        return obj.tolist()
    return str(obj)


def record_to_json(record: Dict[str, Any]) -> str:
    """One flat JSON line: time, level, origin, message and the bound context"""
    entry = {
        "timestamp": record["time"].timestamp(),
        "level": record["level"].name,
        "module": record["name"],
        "line": record["line"],
        "message": record["message"],
        **record["extra"],
    }
    if record["exception"] is not None:
        entry["exception"] = repr(record["exception"].value)
    return json.dumps(entry, default=json_default, ensure_ascii=False)


class LogConfig:
    """Sinks and interception for one process"""

    def __init__(self, level: Optional[str] = None, log_format: Optional[str] = None,
                 to_file: Optional[bool] = None, log_dir: Optional[str] = None):
        self.level = level or settings.log_level
        self.log_format = log_format or settings.log_format
        self.to_file = settings.log_to_file if to_file is None else to_file
        self.log_dir = log_dir or settings.log_dir

    @staticmethod
    def patch_context(record: Dict[str, Any]) -> None:
        # Lazy import, log.context logs through this module
        from log.context import LogContext

        for key, value in LogContext.snapshot().items():
            record["extra"].setdefault(key, value)
        record["extra"].setdefault("run_id", "-")
        record["extra"]["json"] = record_to_json(record)

    @staticmethod
    def intercept_standard_logging() -> None:
        logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
        for name in [*logging.root.manager.loggerDict.keys(), "py.warnings"]:
            logging.getLogger(name).handlers = [InterceptHandler()]
        logging.captureWarnings(True)

    def add_file_sinks(self) -> None:
        os.makedirs(self.log_dir, exist_ok=True)
        for file_name, level in (("app.log", self.level), ("error.log", "ERROR")):
            loguru_logger.add(
                os.path.join(self.log_dir, file_name),
                level=level,
                format="{extra[json]}",
                rotation=settings.log_rotation,
                retention=settings.log_retention,
                compression="zip",
                encoding="utf-8",
            )

    def setup_logging(self):
        """
        Replace every loguru sink with this configuration.

        Console output goes to stderr so stdout carries only command
        payloads. File sinks always write JSON lines.
        """
        loguru_logger.remove()
        self.intercept_standard_logging()
        loguru_logger.configure(patcher=self.patch_context)

        if self.log_format == "json":
            loguru_logger.add(sys.stderr, level=self.level, format="{extra[json]}", colorize=False)
        else:
            loguru_logger.add(sys.stderr, level=self.level, format=TEXT_FORMAT, colorize=True)

        if self.to_file:
            self.add_file_sinks()
        return loguru_logger


# Global log configuration instance
log_config = LogConfig()
logger = log_config.setup_logging()


def get_logger(name: Optional[str] = None, **context) -> Any:
    """
    Loguru logger with bound context.

    Args:
        name: Recorded as `logger_name` when given
        **context: Additional fields bound to every record
    """
    if name:
        context.setdefault("logger_name", name)
    return logger.bind(**context) if context else logger


__all__ = ["logger", "get_logger", "LogConfig", "InterceptHandler", "json_default", "record_to_json"]
