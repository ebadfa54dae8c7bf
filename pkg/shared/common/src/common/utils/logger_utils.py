import sys

from loguru import logger

from common import settings as common_settings

STDERR_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss.SSSSSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | <level>{message}</level> | "
    "<magenta>{extra}</magenta>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSSSSS} | {level: <8} | {name}:{function}:{line} | {message} | {extra}"


def setup_logging(level: str | None = None) -> None:
    """Route loguru to stderr (and optionally a rotating file) so stdout stays free for reports."""
    logger.remove()
    logger.add(
        sys.stderr,
        format=STDERR_FORMAT,
        level=level or common_settings.LOG_LEVEL,
        colorize=True,
    )
    if common_settings.LOG_FILE_ENABLED:
        logger.add(
            common_settings.LOG_FILE_PATH,
            format=FILE_FORMAT,
            level="DEBUG",
            rotation="10 MB",
            retention="10 days",
            colorize=False,
        )
