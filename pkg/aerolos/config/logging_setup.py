# aerolos/config/logging_setup.py

import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"

def configure_logging(level: str | int = "WARNING") -> None:
    """Sends all aerolos diagnostics to standard error; standard output is reserved for CSV."""
    root = logging.getLogger("aerolos")
    root.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level.upper() if isinstance(level, str) else level)
    root.propagate = False
