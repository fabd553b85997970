import logging
import sys
from typing import Optional

from colorama import Fore, Style
from colorama import init as colorama_init

_ROOT = "turbo_lerch"

_LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    """Colours the level name; everything else is plain text."""

    def __init__(self, use_color: bool = True):

        super().__init__("%(asctime)s %(levelname)s %(name)s: %(message)s", datefmt="%H:%M:%S")
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:

        text = super().format(record)
        if not self.use_color:
            return text
        color = _LEVEL_COLORS.get(record.levelno, "")
        return text.replace(record.levelname, f"{color}{record.levelname}{Style.RESET_ALL}", 1)


def get_logger(name: str) -> logging.Logger:

    if not name.startswith(_ROOT):
        name = f"{_ROOT}.{name}"
    return logging.getLogger(name)


def setup_logging(verbosity: int = 0, stream=None, use_color: Optional[bool] = None) -> logging.Logger:
    """
    Installs a single stream handler on the package logger.
    verbosity 0 -> WARNING, 1 -> INFO, 2+ -> DEBUG.
    """
    stream = stream or sys.stderr
    if use_color is None:
        use_color = hasattr(stream, "isatty") and stream.isatty()
    if use_color:
        colorama_init()

    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(max(verbosity, 0), 2)]
    logger = logging.getLogger(_ROOT)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    handler = logging.StreamHandler(stream)
    handler.setFormatter(ColorFormatter(use_color))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger
