"""Unit tests for logging setup."""

import logging

import pytest

from src.utils.logging import setup_logging


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    package_level = logging.getLogger("src").level
    yield
    for handler in root.handlers[:]:
        root.removeHandler(handler)
        handler.close()
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)
    logging.getLogger("src").setLevel(package_level)
    logging.captureWarnings(False)


class TestSetupLogging:
    """Tests for setup_logging."""

    def test_silent_by_default(self):
        """Without --verbose or a log file, package records are suppressed."""
        setup_logging(level="DEBUG")
        assert logging.getLogger().handlers == []
        assert not logging.getLogger("src.sweep.runner").isEnabledFor(logging.ERROR)

    def test_verbose_adds_stderr_handler(self):
        """--verbose mirrors records at the requested level."""
        setup_logging(level="INFO", verbose=True)
        handlers = logging.getLogger().handlers
        assert len(handlers) == 1
        assert handlers[0].level == logging.INFO
        assert logging.getLogger("src.sweep.runner").isEnabledFor(logging.INFO)
        assert not logging.getLogger("src.sweep.runner").isEnabledFor(logging.DEBUG)

    def test_log_file_receives_debug(self, tmp_path):
        """A log file captures DEBUG records even without --verbose."""
        log_file = tmp_path / "run.log"
        setup_logging(level="ERROR", log_file=str(log_file))
        logging.getLogger("src.physics.spectrum").debug("refined grid to 4096 points")
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert "refined grid to 4096 points" in log_file.read_text(encoding="utf-8")
