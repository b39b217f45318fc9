"""
Logging configuration and utilities.
"""

import functools
import logging
import logging.config
import time
from pathlib import Path
from typing import Optional, Union

import yaml
from pythonjsonlogger import jsonlogger


def setup_logging(
    config_path: Optional[Union[str, Path]] = None,
    log_level: Optional[str] = None,
    log_format: Optional[str] = None,
    log_dir: Optional[Union[str, Path]] = None
) -> None:
    """
    Set up logging configuration.

    Args:
        config_path: Path to logging configuration file
        log_level: Override log level
        log_format: Override file formatter (json, detailed)
        log_dir: Directory that replaces the directory of every file handler
    """
    if config_path and Path(config_path).exists():
        with open(config_path, 'r') as f:
            config = yaml.safe_load(f)

        # Override log level if specified
        if log_level:
            config['root']['level'] = log_level.upper()
            for logger_config in config['loggers'].values():
                logger_config['level'] = log_level.upper()

        for handler in config['handlers'].values():
            if 'filename' not in handler:
                continue
            if log_dir:
                handler['filename'] = str(Path(log_dir) / Path(handler['filename']).name)
            Path(handler['filename']).parent.mkdir(parents=True, exist_ok=True)
            if log_format and log_format.lower() == 'simple' and handler.get('formatter') == 'json':
                handler['formatter'] = 'detailed'

        logging.config.dictConfig(config)
    else:
        # Default logging configuration
        setup_default_logging(log_level, log_format, log_dir)


def setup_default_logging(
    log_level: Optional[str] = None,
    log_format: Optional[str] = None,
    log_dir: Optional[Union[str, Path]] = None
) -> None:
    """
    Set up default logging configuration.

    Args:
        log_level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_format: Log format (json, simple)
        log_dir: Directory for the log file
    """
    level = getattr(logging, (log_level or "INFO").upper())

    if log_format and log_format.lower() == "json":
        formatter = jsonlogger.JsonFormatter(
            '%(asctime)s %(name)s %(levelname)s %(message)s'
        )
    else:
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

    # Console goes to stderr; stdout is reserved for results
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)

    directory = Path(log_dir or "data/logs")
    directory.mkdir(parents=True, exist_ok=True)

    file_handler = logging.FileHandler(directory / "bellparity.log")
    file_handler.setLevel(level)
    file_handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.addHandler(console_handler)
    root_logger.addHandler(file_handler)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger with the specified name.

    Args:
        name: Logger name

    Returns:
        Configured logger instance
    """
    return logging.getLogger(name)


class LoggerMixin:
    """Mixin class to add logging capabilities to any class."""

    @property
    def logger(self) -> logging.Logger:
        """Get logger for this class."""
        return get_logger(self.__class__.__name__)


def log_execution_time(channel: str):
    """Decorator that logs wall time of a call on the given channel logger."""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger(channel)
            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                elapsed = time.perf_counter() - start_time
                logger.error(f"{func.__name__} failed after {elapsed:.2f} seconds: {e}")
                raise
            elapsed = time.perf_counter() - start_time
            logger.info(f"{func.__name__} executed in {elapsed:.2f} seconds")
            return result
        return wrapper
    return decorator
