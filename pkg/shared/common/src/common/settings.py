import os
from pathlib import Path

from dotenv import load_dotenv
from loguru import logger

COMMON_DOTENV_PATH = os.getenv("COMMON_DOTENV_PATH", ".env")
_dotenv_path = Path(COMMON_DOTENV_PATH)
if _dotenv_path.exists():
    load_dotenv(dotenv_path=_dotenv_path)
else:
    logger.debug(f"No .env file found at {COMMON_DOTENV_PATH}, using defaults/environment variables")

# Logging settings
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FILE_ENABLED = os.getenv("LOG_FILE_ENABLED") == "True"
LOG_FILE_PATH = os.getenv("LOG_FILE_PATH", "logs/lieperiod.log")

# Report settings
REPORT_TIMING = os.getenv("REPORT_TIMING") == "True"

# Verification settings
DEFAULT_MAX_WEIGHT = int(os.getenv("DEFAULT_MAX_WEIGHT", "12"))
SERIES_ORDER = int(os.getenv("SERIES_ORDER", "8"))
KERNEL_MAX_WEIGHT = int(os.getenv("KERNEL_MAX_WEIGHT", "40"))
