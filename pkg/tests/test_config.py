import logging

from src.config import (
    DEFAULT_MAX_PATTERNS,
    DEFAULT_MAX_WEIGHT,
    configure_logging,
    get_settings,
)


def test_defaults(fresh_settings):
    for key in ("SEQCUBE_MAX_PATTERNS", "SEQCUBE_MAX_WEIGHT", "SEQCUBE_LOG_LEVEL"):
        fresh_settings.delenv(key, raising=False)
    settings = get_settings()
    assert settings.max_patterns == DEFAULT_MAX_PATTERNS
    assert settings.max_weight == DEFAULT_MAX_WEIGHT
    assert settings.log_level == "WARNING"
    assert settings.workers >= 1


def test_environment_overrides(fresh_settings):
    fresh_settings.setenv("SEQCUBE_MAX_PATTERNS", "1000")
    fresh_settings.setenv("SEQCUBE_MAX_WEIGHT", "3")
    fresh_settings.setenv("SEQCUBE_LOG_LEVEL", "debug")
    settings = get_settings()
    assert settings.max_patterns == 1000
    assert settings.max_weight == 3
    assert settings.log_level == "DEBUG"


def test_bad_values_fall_back_to_defaults(fresh_settings, caplog):
    fresh_settings.setenv("SEQCUBE_MAX_WEIGHT", "many")
    fresh_settings.setenv("SEQCUBE_MAX_PATTERNS", "-5")
    with caplog.at_level(logging.WARNING):
        settings = get_settings()
    assert settings.max_weight == DEFAULT_MAX_WEIGHT
    assert settings.max_patterns == DEFAULT_MAX_PATTERNS
    assert "SEQCUBE_MAX_WEIGHT" in caplog.text


def test_configure_logging(fresh_settings):
    configure_logging("info")
    assert logging.getLogger().level == logging.INFO
    configure_logging("WARNING")
    assert logging.getLogger().level == logging.WARNING
