"""Per-profile run logs."""

import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Self

from hyperchroma.config_manager import ConfigManager

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class RunLogger:
    """File logger for one config profile; closes its handler on exit.

    Colorer attempts, experiment sweeps, oracle searches and MCP tool calls all
    log through this, so one profile's runs end up in one file.
    """

    def __init__(self, profile: str, level: int = logging.INFO) -> None:
        self.profile = profile
        self.logger = logging.getLogger(f"hyperchroma.{profile}")

        if not self.logger.handlers:
            self.log_path.parent.mkdir(parents=True, exist_ok=True)
            self.logger.setLevel(level)

            handler = logging.FileHandler(self.log_path, encoding="utf-8")
            handler.setFormatter(logging.Formatter(LOG_FORMAT))
            self.logger.addHandler(handler)

    @property
    def log_path(self) -> Path:
        return ConfigManager.HYPERCHROMA_HOME / "logs" / f"{self.profile}.log"

    def __enter__(self) -> Self:
        return self

    def __exit__(self, *args: object) -> None:
        self.close()

    def close(self) -> None:
        """Close and remove all handlers."""
        for handler in self.logger.handlers[:]:
            handler.close()
            self.logger.removeHandler(handler)

    @contextmanager
    def timed(self, label: str) -> Iterator[None]:
        """Log wall-clock time of a block; failures are logged and re-raised."""
        start = time.perf_counter()
        self.info(f"{label} started")
        try:
            yield
        except Exception as e:
            self.error(f"{label} failed after {time.perf_counter() - start:.3f}s: {e}")
            raise
        self.info(f"{label} finished in {time.perf_counter() - start:.3f}s")

    def info(self, message: str) -> None:
        self.logger.info(message)

    def warning(self, message: str) -> None:
        self.logger.warning(message)

    def error(self, message: str) -> None:
        self.logger.error(message)

    def debug(self, message: str) -> None:
        self.logger.debug(message)
