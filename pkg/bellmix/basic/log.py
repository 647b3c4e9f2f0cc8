import logging
import os

DEFAULT_LEVEL = os.environ.get("BELLMIX_LOG_LEVEL", "WARNING")


def setup_logger(filename, classname, level=None):
    """Return the `<file>.<class>` logger, attaching a stderr handler once."""
    logger = logging.getLogger(f"{os.path.basename(filename)}.{classname}")
    level = (level or DEFAULT_LEVEL).upper()
    if not logger.handlers:
        logger.propagate = False  # keep stdout free for JSON/CSV payloads
        handler = logging.StreamHandler()
        formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    logger.setLevel(level)
    return logger
