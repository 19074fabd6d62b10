import logging
from logging import Logger

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
PACKAGE_LOGGER = "pursuit_evasion"


def get_logger(name: str) -> Logger:
    """Return a logger that writes through the package handler on stderr.

    Avoids reconfiguring logging if called multiple times.
    """
    root = logging.getLogger(PACKAGE_LOGGER)
    if not root.handlers:
        root.setLevel(logging.INFO)
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.propagate = False

    if name == "__main__":
        name = f"{PACKAGE_LOGGER}.cli"
    return logging.getLogger(name)


def setup_logging(level: str = "INFO") -> None:
    """Explicitly set the package log level (used by the command line)."""
    get_logger(PACKAGE_LOGGER).setLevel(level.upper())
