from __future__ import annotations

import json
from typing import Any, Literal

from pydantic import BaseModel, Field

from common import settings as common_settings
from common.models.error_models import CheckFailure


class RunReport(BaseModel):
    command: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    status: Literal["pass", "fail"] = "pass"
    payload: Any = None
    elapsed_ms: int = 0
    failure: CheckFailure | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def fail(self, failure: CheckFailure) -> None:
        """Mark the report failed, keeping the first failure only."""
        self.status = "fail"
        if self.failure is None:
            self.failure = failure

    def dump_json(self) -> str:
        exclude = None if common_settings.REPORT_TIMING else {"elapsed_ms"}
        return json.dumps(self.model_dump(mode="json", exclude=exclude), indent=2, sort_keys=True)
