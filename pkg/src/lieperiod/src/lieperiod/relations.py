"""Linear relations among {phi_i, phi_j}, [phi_i, phi_j] and D_{phi_i}(phi_j) at a fixed weight."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from loguru import logger

from common.utils.exceptions import DomainException
from lieperiod.arith import bernoulli_number, binomial, integer_normalize
from lieperiod.freelie import NCPoly
from lieperiod.ihara import Pair, evaluate_pairs, phi_derivation, phi_ihara, phi_lie


class RelationKind(str, enum.Enum):
    IHARA = "ihara"
    LIE = "lie"
    DERIVATION = "derivation"

    @property
    def antisymmetric(self) -> bool:
        return self is not RelationKind.DERIVATION

    def bracket(self, i: int, j: int) -> NCPoly:
        if self is RelationKind.IHARA:
            return phi_ihara(i, j)
        if self is RelationKind.LIE:
            return phi_lie(i, j)
        return phi_derivation(i, j)


@dataclass(frozen=True)
class PairRelation:
    """sum of a_ij X(phi_i, phi_j) with X one of {.,.}, [.,.] or D.

    Ihara and Lie relations are stored canonically: i < j, no zero terms, no
    {phi_1, .} terms for Ihara, coprime integer coefficients, and the pair with
    the largest i carries a positive coefficient.
    """

    weight: int
    kind: RelationKind
    coeffs: Mapping[Pair, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", RelationKind(self.kind))
        object.__setattr__(self, "coeffs", dict(sorted(self.coeffs.items())))
        for (i, j), c in self.coeffs.items():
            if i < 1 or j < 1 or i + j != self.weight:
                raise DomainException(f"Pair ({i}, {j}) does not have weight {self.weight}")
            if c == 0:
                raise DomainException(f"Zero coefficient stored for pair ({i}, {j})")
            if self.kind.antisymmetric and i >= j:
                raise DomainException(f"Pair ({i}, {j}) is not folded to i < j")
            if self.kind is RelationKind.IHARA and i == 1:
                raise DomainException("{phi_1, .} vanishes and is never stored")
        if self.kind.antisymmetric and self.coeffs:
            values = list(self.coeffs.values())
            if integer_normalize(values) != values:
                raise DomainException("Ihara and Lie relations must be integer-normalized")

    @classmethod
    def from_terms(cls, weight: int, kind: RelationKind | str, terms: Mapping[Pair, Fraction]) -> "PairRelation":
        """Build the canonical relation from raw (possibly unfolded, rational) terms."""
        kind = RelationKind(kind)
        if not kind.antisymmetric:
            # D_{phi_i}(phi_1) = D_{phi_i}(b) = 0
            return cls(weight, kind, {(i, j): Fraction(c) for (i, j), c in terms.items() if c and j != 1})

        folded: dict[Pair, Fraction] = {}
        for (i, j), c in terms.items():
            if i == j:
                continue
            key, c = ((i, j), Fraction(c)) if i < j else ((j, i), -Fraction(c))
            folded[key] = folded.get(key, Fraction(0)) + c
        folded = {
            (i, j): c for (i, j), c in folded.items() if c and not (kind is RelationKind.IHARA and i == 1)
        }
        pairs = sorted(folded)
        normalized = integer_normalize(folded[pair] for pair in pairs)
        return cls(weight, kind, dict(zip(pairs, normalized)))

    @property
    def pairs(self) -> list[Pair]:
        return list(self.coeffs)

    def is_empty(self) -> bool:
        return not self.coeffs

    def evaluate(self) -> NCPoly:
        return evaluate_pairs(self.coeffs, self.kind.bracket)

    def annihilates(self) -> bool:
        """True iff the weighted sum of brackets is exactly zero."""
        residue = self.evaluate()
        if residue:
            logger.error(f"Relation of weight {self.weight} leaves {len(residue)} nonzero words")
        return residue.is_zero()

    def is_proportional(self, other: "PairRelation") -> bool:
        if self.kind != other.kind or self.weight != other.weight or set(self.coeffs) != set(other.coeffs):
            return False
        if not self.coeffs:
            return True
        first = next(iter(self.coeffs))
        ratio = other.coeffs[first] / self.coeffs[first]
        return all(other.coeffs[pair] == ratio * c for pair, c in self.coeffs.items())

    def to_text(self) -> str:
        if not self.coeffs:
            return "0 = 0"
        symbol = {RelationKind.IHARA: "{{phi_{}, phi_{}}}", RelationKind.LIE: "[phi_{}, phi_{}]"}.get(
            self.kind, "D_phi_{}(phi_{})"
        )
        parts = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda item: -item[0][0]):
            body = f"{abs(c)}*" + symbol.format(i, j)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        return f"0 = {text}"


def _drop_zero(terms: Iterable[tuple[Pair, Fraction]]) -> dict[Pair, Fraction]:
    return {pair: c for pair, c in terms if c}


def dpcroch1_terms(n: int) -> dict[Pair, Fraction]:
    """sum_{i=0}^{n} C(n-2+i, n-2) b_i D_{phi_{n-1+i}}(phi_{n+1-i}), raw."""
    if n < 2:
        raise DomainException(f"The first derivation relation needs n >= 2, got {n}")
    return _drop_zero(
        ((n - 1 + i, n + 1 - i), binomial(n - 2 + i, n - 2) * bernoulli_number(i)) for i in range(n + 1)
    )


def dpcroch2_terms(n: int, p: int) -> dict[Pair, Fraction]:
    """Antisymmetry of [phi_n, phi_p] written in derivation values, raw (j = 1 terms included)."""
    if n < 2 or p < 2:
        raise DomainException(f"The second derivation relation needs n, p >= 2, got ({n}, {p})")
    return _drop_zero(
        (
            (i, n + p - i),
            binomial(i - 1, i - p + 1) * bernoulli_number(i - p + 1) / (p - 1)
            + binomial(i - 1, i - n + 1) * bernoulli_number(i - n + 1) / (n - 1),
        )
        for i in range(1, n + p)
    )


def cor1_terms(n: int) -> dict[Pair, Fraction]:
    """sum_{i=0}^{2n} C(2n-2+i, 2n-2) b_i {phi_{2n-i+1}, phi_{2n+i-1}}, raw."""
    if n < 1:
        raise DomainException(f"The first Ihara relation needs n >= 1, got {n}")
    return _drop_zero(
        ((2 * n - i + 1, 2 * n + i - 1), binomial(2 * n - 2 + i, 2 * n - 2) * bernoulli_number(i))
        for i in range(2 * n + 1)
    )


def cor2_terms(n: int, p: int) -> dict[Pair, Fraction]:
    """Antisymmetry of [phi_2n, phi_2p] written in Ihara brackets, raw."""
    if n < 1 or p < 1:
        raise DomainException(f"The second Ihara relation needs n, p >= 1, got ({n}, {p})")
    return _drop_zero(
        (
            (2 * n + 2 * p - i, i),
            binomial(i - 1, i - 2 * p + 1) * bernoulli_number(i - 2 * p + 1) / (2 * p - 1)
            + binomial(i - 1, i - 2 * n + 1) * bernoulli_number(i - 2 * n + 1) / (2 * n - 1),
        )
        for i in range(1, 2 * n + 2 * p)
    )


def relation_dpcroch1(n: int) -> PairRelation:
    return PairRelation.from_terms(2 * n, RelationKind.DERIVATION, dpcroch1_terms(n))


def relation_dpcroch2(n: int, p: int) -> PairRelation:
    return PairRelation.from_terms(n + p, RelationKind.DERIVATION, dpcroch2_terms(n, p))


def relation_cor1(n: int) -> PairRelation:
    return PairRelation.from_terms(4 * n, RelationKind.IHARA, cor1_terms(n))


def relation_cor2(n: int, p: int) -> PairRelation:
    return PairRelation.from_terms(2 * n + 2 * p, RelationKind.IHARA, cor2_terms(n, p))
