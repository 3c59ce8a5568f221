# gslice/core/log.py
import logging

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: str = "WARNING", verbosity: int = 0) -> None:
    """Configure root logging on stderr; each -v lowers the threshold one step"""
    if verbosity >= 2:
        level = "DEBUG"
    elif verbosity == 1:
        level = "INFO"
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT, force=True)
