import logging
import os
from logging.handlers import RotatingFileHandler

_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def logs_dir() -> str:
    """Directory for log files: $APTC_LOG_DIR or <cwd>/logs."""
    path = os.environ.get("APTC_LOG_DIR") or os.path.join(os.getcwd(), "logs")
    os.makedirs(path, exist_ok=True)
    return path


def get_logger(name: str, filename: str) -> logging.Logger:
    """Module logger with its own rotating file (avoid global basicConfig)."""
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = RotatingFileHandler(os.path.join(logs_dir(), filename), maxBytes=1_000_000, backupCount=3, encoding="utf-8")
        handler.setFormatter(logging.Formatter(_FORMAT))
        logger.addHandler(handler)
        logger.setLevel(logging.INFO)
        logger.propagate = False
    return logger
