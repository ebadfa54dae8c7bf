"""Wire forms of relations, polynomials and kernel reports. Rationals travel as exact strings."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, field_validator

from lieperiod.arith import PolyQ, format_rational, parse_rational
from lieperiod.period import WeightedPoly
from lieperiod.relations import PairRelation, RelationKind


def _check_rational(value: str) -> str:
    parse_rational(value)
    return value


class PairTermModel(BaseModel):
    i: int
    j: int
    coef: str

    @field_validator("coef")
    @classmethod
    def check_coef(cls, v: str) -> str:
        return _check_rational(v)


class PairRelationModel(BaseModel):
    weight: int
    kind: Literal["ihara", "lie", "derivation"]
    terms: list[PairTermModel] = Field(default_factory=list)

    @classmethod
    def from_relation(cls, rel: PairRelation) -> "PairRelationModel":
        return cls(
            weight=rel.weight,
            kind=rel.kind.value,
            terms=[PairTermModel(i=i, j=j, coef=format_rational(c)) for (i, j), c in rel.coeffs.items()],
        )

    def to_relation(self) -> PairRelation:
        coeffs = {(t.i, t.j): parse_rational(t.coef) for t in self.terms}
        return PairRelation(self.weight, RelationKind(self.kind), coeffs)


class WeightedPolyModel(BaseModel):
    w: int
    coeffs: list[str]

    @field_validator("coeffs")
    @classmethod
    def check_coeffs(cls, v: list[str]) -> list[str]:
        return [_check_rational(c) for c in v]

    @classmethod
    def from_poly(cls, P: WeightedPoly) -> "WeightedPolyModel":
        return cls(**P.to_json())

    def to_poly(self) -> WeightedPoly:
        return WeightedPoly(PolyQ.from_coeffs(parse_rational(c) for c in self.coeffs), self.w)


class RelationRecordModel(BaseModel):
    family: Literal["cor1", "cor2", "dpcroch1", "dpcroch2"]
    arguments: list[int]
    relation: PairRelationModel
    annihilates: bool


class PeriodRecordModel(BaseModel):
    source: str
    polynomial: WeightedPolyModel
    text: str
    is_period_polynomial: bool


class KernelReportModel(BaseModel):
    weight: int
    pairs: list[tuple[int, int]]
    kernel: list[list[str]]
    dim: int
    cusp_dim: int
