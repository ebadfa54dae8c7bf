from typing import Optional

from pydantic import BaseModel, model_validator


class CheckFailure(BaseModel):
    formula: str
    n: int
    p: Optional[int] = None
    detail: Optional[str] = None
    message: Optional[str] = None

    @model_validator(mode="after")
    def make_message(self):
        where = f"(n={self.n}, p={self.p})" if self.p is not None else f"(n={self.n})"
        self.message = f"Identity {self.formula} failed at {where}"
        if self.detail:
            self.message += f": {self.detail}"
        return self
