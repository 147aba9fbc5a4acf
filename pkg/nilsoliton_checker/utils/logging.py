"""Logging configuration for checker runs"""

import logging
import os
import sys
import uuid
from logging.handlers import RotatingFileHandler
from typing import Optional

LOGGER_NAME = "nilsoliton_checker"
DEFAULT_LOG_FILENAME = "nilsoliton_checker.log"

CONSOLE_FORMAT = "%(levelname)s [%(command)s] %(message)s"
FILE_FORMAT = "%(asctime)s %(levelname)s [%(command)s %(run_id)s] %(module)s.%(funcName)s:%(lineno)d %(message)s"


class RunContextFilter(logging.Filter):
    """Stamps every record with the subcommand and an id shared by one invocation"""

    def __init__(self, command: Optional[str] = None, run_id: Optional[str] = None):
        super().__init__()
        self.command = command or "-"
        self.run_id = run_id or uuid.uuid4().hex[:8]

    def filter(self, record: logging.LogRecord) -> bool:
        record.command = self.command
        record.run_id = self.run_id
        return True


def resolve_log_path(log_file: str) -> str:
    """Expand ~ and variables; a directory gets the default file name"""
    log_path = os.path.expanduser(os.path.expandvars(log_file))
    if log_path.endswith(os.sep) or os.path.isdir(log_path):
        log_path = os.path.join(log_path, DEFAULT_LOG_FILENAME)
    return log_path


def setup_logging(
    level: str = "INFO",
    log_file: Optional[str] = None,
    max_file_size_mb: int = 10,
    backup_count: int = 5,
    command: Optional[str] = None
) -> logging.Logger:
    """
    Configure the checker logger for one invocation.

    Console records go to stderr so stdout carries only the report. The
    optional rotating file keeps DEBUG records from every run, each tagged
    with the subcommand and a run id so parallel reproduce claims from one
    run can be told apart from the next run.
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    for handler in list(logger.handlers):
        handler.close()
    logger.handlers.clear()

    context = RunContextFilter(command)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level.upper(), logging.INFO))
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    console_handler.addFilter(context)
    logger.addHandler(console_handler)

    if log_file:
        log_path = resolve_log_path(log_file)
        try:
            log_dir = os.path.dirname(log_path)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
            file_handler = RotatingFileHandler(
                log_path,
                maxBytes=max_file_size_mb * 1024 * 1024,
                backupCount=backup_count,
                encoding="utf-8"
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
            file_handler.addFilter(context)
            logger.addHandler(file_handler)
        except (PermissionError, OSError) as e:
            logger.warning(f"Could not create log file at {log_path}: {e}. Continuing with console logging only.")

    return logger
