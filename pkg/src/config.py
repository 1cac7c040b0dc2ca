"""
Configuration Module
--------------------
Runtime settings read from the environment (and an optional .env file) once per
process. CLI flags override these values; nothing else in the package reads the
environment directly.
"""

import logging
import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

DEFAULT_MAX_EXPONENT = 30
DEFAULT_MAX_PATTERNS = 2**26
DEFAULT_MAX_WEIGHT = 8


@dataclass(frozen=True)
class Settings:
    max_exponent: int
    workers: int
    max_patterns: int
    max_weight: int
    log_level: str


def _int_from_env(key, default):
    raw = os.getenv(key)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        logging.getLogger(__name__).warning(f"Ignoring non-integer {key}={raw!r}")
        return default
    if value <= 0:
        logging.getLogger(__name__).warning(f"Ignoring non-positive {key}={raw!r}")
        return default
    return value


@lru_cache(maxsize=1)
def get_settings():
    """
    Load settings from the environment.

    :return: Settings - Immutable settings shared by the whole process.
    """
    load_dotenv()
    return Settings(
        max_exponent=_int_from_env("SEQCUBE_MAX_EXPONENT", DEFAULT_MAX_EXPONENT),
        workers=_int_from_env("SEQCUBE_WORKERS", os.cpu_count() or 1),
        max_patterns=_int_from_env("SEQCUBE_MAX_PATTERNS", DEFAULT_MAX_PATTERNS),
        max_weight=_int_from_env("SEQCUBE_MAX_WEIGHT", DEFAULT_MAX_WEIGHT),
        log_level=os.getenv("SEQCUBE_LOG_LEVEL", "WARNING").upper(),
    )


def configure_logging(level=None):
    """
    Configure root logging on the error stream.

    :param level: str - Level name; defaults to the configured SEQCUBE_LOG_LEVEL.
    """
    level_name = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=LOG_FORMAT,
        force=True,
    )
