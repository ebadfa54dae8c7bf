"""Exact relation spaces among the Ihara brackets {phi_i, phi_j}, i and j odd, at a fixed weight.

The kernel is computed by fraction-free (Bareiss) elimination on integer rows
obtained by clearing denominators row by row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from loguru import logger

from common.utils.exceptions import DomainException, EliminationException
from common.utils.timer_logger import TimerLogger
from lieperiod.arith import integer_normalize
from lieperiod.freelie import Word
from lieperiod.ihara import Pair, phi_ihara
from lieperiod.relations import PairRelation, RelationKind

Vector = list[Fraction]


@dataclass(frozen=True)
class SparseMatQ:
    row_labels: tuple[Word, ...]
    cols: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    col_labels: tuple[Pair, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", {rc: Fraction(v) for rc, v in self.entries.items() if v})
        for r, c in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DomainException(f"Entry ({r}, {c}) lies outside a {self.rows}x{self.cols} matrix")

    @property
    def rows(self) -> int:
        return len(self.row_labels)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]]) -> "SparseMatQ":
        cols = len(rows[0]) if rows else 0
        entries = {(r, c): Fraction(v) for r, row in enumerate(rows) for c, v in enumerate(row) if v}
        return cls(tuple(str(r) for r in range(len(rows))), cols, entries)

    def dense_rows(self) -> list[Vector]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out


def odd_pairs(w: int) -> list[Pair]:
    """(i, w - i) with i odd and 3 <= i < w - i."""
    return [(i, w - i) for i in range(3, w // 2 + 1, 2) if i < w - i]


def bracket_matrix(w: int) -> SparseMatQ:
    """Word coordinates of {phi_i, phi_j} for every odd pair 3 <= i < j with i + j = w."""
    if w < 8 or w % 2:
        raise DomainException(f"Bracket matrices are built for even weights >= 8, got {w}")
    with TimerLogger("bracket_matrix", {"weight": w}):
        labels = odd_pairs(w)
        columns = [phi_ihara(i, j) for i, j in labels]
        words = sorted({word for col in columns for word in col.terms})
        index = {word: r for r, word in enumerate(words)}
        entries = {(index[word], c): coef for c, col in enumerate(columns) for word, coef in col.terms.items()}
    logger.debug(f"Bracket matrix of weight {w}: {len(words)} words x {len(labels)} pairs, {len(entries)} entries")
    return SparseMatQ(tuple(words), len(labels), entries, tuple(labels))


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        denom = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        out.append([int(Fraction(v) * denom) for v in row])
    return out


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> list[int]:
    """Fraction-free row echelon form in place; returns the pivot columns."""
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        head = rows[r][c]
        for k in range(r + 1, len(rows)):
            factor = rows[k][c]
            for j in range(c + 1, ncols):
                quotient, remainder = divmod(head * rows[k][j] - factor * rows[r][j], prev)
                if remainder:
                    raise EliminationException(k, j)
                rows[k][j] = quotient
            rows[k][c] = 0
        prev = head
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def _rank_of_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(_bareiss_echelon(_integer_rows(rows), ncols))


def kernel_basis(M: SparseMatQ) -> list[Vector]:
    """Basis of {v : M v = 0}, one vector per free column, each integer-normalized
    (coprime entries, last nonzero entry positive)."""
    with TimerLogger("kernel_basis", {"rows": M.rows, "cols": M.cols}):
        rows = _integer_rows(M.dense_rows())
        pivots = _bareiss_echelon(rows, M.cols)
        free = [c for c in range(M.cols) if c not in pivots]
        basis = []
        for f in free:
            x = [Fraction(0)] * M.cols
            x[f] = Fraction(1)
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                acc = sum((rows[r][j] * x[j] for j in range(pc + 1, M.cols)), Fraction(0))
                x[pc] = -acc / rows[r][pc]
            basis.append(integer_normalize(x))
    logger.debug(f"Kernel of a {M.rows}x{M.cols} matrix: rank {len(pivots)}, dimension {len(basis)}")
    return basis


def matrix_rank(M: SparseMatQ) -> int:
    return _rank_of_rows(M.dense_rows(), M.cols)


def span_contains(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    """True iff v is a rational combination of the basis vectors."""
    if not any(v):
        return True
    if not basis:
        return False
    ncols = len(v)
    return _rank_of_rows([*basis, v], ncols) == _rank_of_rows(basis, ncols)


def relation_vector(rel: PairRelation, labels: Sequence[Pair]) -> Vector:
    """Coefficients of rel aligned with the given column labels."""
    unknown = set(rel.coeffs) - set(labels)
    if unknown:
        raise DomainException(f"Pairs {sorted(unknown)} are not columns of this matrix")
    return [Fraction(rel.coeffs.get(pair, 0)) for pair in labels]


def kernel_relations(w: int) -> list[PairRelation]:
    """The kernel basis at weight w as canonical Ihara-bracket relations."""
    M = bracket_matrix(w)
    return [
        PairRelation.from_terms(w, RelationKind.IHARA, dict(zip(M.col_labels, vector)))
        for vector in kernel_basis(M)
    ]


def relation_space_dimension(w: int) -> int:
    return len(kernel_basis(bracket_matrix(w)))


def cusp_form_dimension(w: int) -> int:
    """dim S_w(SL_2(Z)) for even w >= 4."""
    if w < 4 or w % 2:
        raise DomainException(f"Cusp form dimension is defined here for even w >= 4, got {w}")
    if w % 12 == 2:
        return w // 12 - 1
    return w // 12
