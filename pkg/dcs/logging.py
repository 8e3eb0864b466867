import logging.config
import sys
from pathlib import Path

import structlog

from dcs import settings


APPDIRS = {
    "win32": "AppData/Roaming",
    "linux": ".config",
    "darwin": "Library/Application Support",
}


def get_appdir():
    subdir = APPDIRS.get(sys.platform)
    if subdir is None:
        return "."
    return Path.home() / subdir


def _log_path(name):
    path = Path(get_appdir()) / "DCS" / name
    path.parent.mkdir(parents=True, exist_ok=True)
    return str(path)


def get_log_filename():
    return _log_path("solver.log")


def get_runs_filename():
    return _log_path("runs.log")


# shared by structlog events and records from plain stdlib loggers
shared_processors = [
    structlog.contextvars.merge_contextvars,
    structlog.stdlib.add_log_level,
    structlog.stdlib.add_logger_name,
    structlog.processors.TimeStamper(fmt="iso", key="ts"),
]

structlog.configure(
    processors=[
        structlog.stdlib.filter_by_level,
        *shared_processors,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
        structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
    ],
    logger_factory=structlog.stdlib.LoggerFactory(),
    wrapper_class=structlog.stdlib.BoundLogger,
    cache_logger_on_first_use=True,
)


def _formatter(colors):
    return {
        "()": structlog.stdlib.ProcessorFormatter,
        "processor": structlog.dev.ConsoleRenderer(colors=colors),
        "foreign_pre_chain": shared_processors,
    }


def _file_handler(filename, level):
    return {
        "level": level,
        "class": "logging.FileHandler",
        "formatter": "plain",
        "filename": filename,
    }


def get_logging_config(level=None):
    """Build the dictConfig for the CLI; log files are only created here"""
    level = level or settings.LOG_LEVEL
    solver_handlers = ["console", "file"]
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {"coloured": _formatter(True), "plain": _formatter(False)},
        "handlers": {
            "console": {
                "level": "DEBUG",
                "class": "logging.StreamHandler",
                "formatter": "coloured",
                "stream": "ext://sys.stderr",
            },
            "file": _file_handler(get_log_filename(), "DEBUG"),
            "runs_file": _file_handler(get_runs_filename(), "INFO"),
        },
        "root": {"handlers": solver_handlers, "level": "WARNING"},
        "loggers": {
            "dcs": {"handlers": solver_handlers, "level": level, "propagate": False},
            "audit": {"handlers": ["runs_file"], "level": "INFO", "propagate": False},
        },
    }


def configure_logging(level=None):
    logging.config.dictConfig(get_logging_config(level))
