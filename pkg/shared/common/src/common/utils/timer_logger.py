import json
import time
import uuid
from typing import Any, Dict, Literal, Optional, get_args

from loguru import logger

TIMER_NAMES = Literal[
    "verify",
    "relations",
    "period",
    "kernel",
    "dptop2",
    "ptof",
    "dpcroch",
    "ltop",
    "series",
    "bracket_matrix",
    "kernel_basis",
]


class TimerLogger:
    """Times a block and logs start/end events as JSON at debug level."""

    def __init__(self, name: TIMER_NAMES, metadata: Optional[Dict[str, Any]] = None):
        self.name = name
        if self.name not in get_args(TIMER_NAMES):
            raise ValueError(f"Invalid timer name: {name}. Valid names are: {', '.join(get_args(TIMER_NAMES))}")
        self.metadata = metadata or {}
        self.enter_time: Optional[float] = None
        self.exit_time: Optional[float] = None
        self.event_id: str = str(uuid.uuid4())

    @property
    def elapsed_ms(self) -> int:
        if self.enter_time is None:
            return 0
        end = self.exit_time if self.exit_time is not None else time.perf_counter()
        return int((end - self.enter_time) * 1000)

    def __enter__(self) -> "TimerLogger":
        self.enter_time = time.perf_counter()
        start_event = {
            "id": self.event_id,
            "name": self.name,
            "type": "start",
            "metadata": self.metadata,
        }
        logger.debug(f"Timer Logger: {json.dumps(start_event, default=str)}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> bool:
        self.exit_time = time.perf_counter()
        end_event = {
            "id": self.event_id,
            "name": self.name,
            "type": "end",
            "metadata": self.metadata,
            "duration_ms": self.elapsed_ms,
        }
        logger.debug(f"Timer Logger: {json.dumps(end_event, default=str)}")
        return False
