import random
from fractions import Fraction

import pytest

from common.utils.exceptions import DomainException
from lieperiod.period import is_period_polynomial, substitute_relation
from lieperiod.relations import PairRelation, RelationKind, relation_cor1, relation_cor2
from lieperiod.relkernel import (
    SparseMatQ,
    bracket_matrix,
    cusp_form_dimension,
    kernel_basis,
    kernel_relations,
    matrix_rank,
    odd_pairs,
    relation_space_dimension,
    relation_vector,
    span_contains,
)

EXPECTED_DIMS = {8: 0, 10: 0, 12: 1, 14: 0, 16: 1, 18: 1, 20: 1, 22: 1, 24: 2}


def test_kernel_basis_of_small_matrices():
    assert kernel_basis(SparseMatQ.from_rows([[1, 0], [0, 1]])) == []
    assert kernel_basis(SparseMatQ.from_rows([[2, -3]])) == [[3, 2]]
    assert kernel_basis(SparseMatQ.from_rows([[Fraction(1, 2), Fraction(1, 3), 0]])) == [[-2, 3, 0], [0, 0, 1]]


def test_kernel_basis_vectors_are_annihilated():
    rng = random.Random(7)
    rows = [[rng.randint(-5, 5) for _ in range(6)] for _ in range(3)]
    rows.append([a + b for a, b in zip(rows[0], rows[1])])
    M = SparseMatQ.from_rows(rows)
    basis = kernel_basis(M)
    assert len(basis) == 6 - matrix_rank(M)
    for v in basis:
        for row in rows:
            assert sum(a * x for a, x in zip(row, v)) == 0


def test_sparse_matrix_rejects_out_of_range_entries():
    with pytest.raises(DomainException):
        SparseMatQ(("r0",), 2, {(0, 2): Fraction(1)})


def test_odd_pair_labels():
    assert odd_pairs(8) == [(3, 5)]
    assert odd_pairs(12) == [(3, 9), (5, 7)]
    assert odd_pairs(14) == [(3, 11), (5, 9)]
    assert bracket_matrix(14).col_labels == ((3, 11), (5, 9))


def test_weight_12_kernel_is_the_known_relation():
    M = bracket_matrix(12)
    assert M.col_labels == ((3, 9), (5, 7))
    assert list(M.row_labels) == sorted(M.row_labels)
    assert kernel_basis(M) == [[-14, 9]]
    (rel,) = kernel_relations(12)
    assert rel.to_text() == "0 = 9*{phi_5, phi_7} - 14*{phi_3, phi_9}"


@pytest.mark.parametrize("w", sorted(EXPECTED_DIMS))
def test_relation_space_matches_cusp_forms(w):
    assert relation_space_dimension(w) == EXPECTED_DIMS[w]
    assert cusp_form_dimension(w) == EXPECTED_DIMS[w]


@pytest.mark.parametrize("w", [12, 16, 20, 24])
def test_kernel_relations_annihilate(w):
    relations = kernel_relations(w)
    assert relations
    assert all(rel.annihilates() for rel in relations)


@pytest.mark.parametrize("w", [12, 16, 18, 20, 22, 24])
def test_kernel_relations_substitute_to_period_polynomials(w):
    relations = kernel_relations(w)
    assert len(relations) == EXPECTED_DIMS[w]
    for rel in relations:
        P = substitute_relation(rel)
        assert P.w == w - 2
        assert not P.poly.is_zero()
        assert is_period_polynomial(P)


@pytest.mark.parametrize("w", [12, 16, 18, 20, 22, 24])
def test_explicit_families_lie_in_the_kernel(w):
    M = bracket_matrix(w)
    basis = kernel_basis(M)
    family = [relation_cor2(n, w // 2 - n) for n in range(1, w // 4 + 1)]
    if w % 4 == 0:
        family.append(relation_cor1(w // 4))
    for rel in family:
        if not rel.is_empty():
            assert span_contains(basis, relation_vector(rel, M.col_labels))


def test_weight_24_kernel_is_spanned_by_the_explicit_families():
    M = bracket_matrix(24)
    vectors = [relation_vector(relation_cor1(6), M.col_labels)]
    vectors += [relation_vector(relation_cor2(n, 12 - n), M.col_labels) for n in range(1, 7)]
    assert matrix_rank(SparseMatQ.from_rows(vectors)) == 2


def test_span_contains_edge_cases():
    assert span_contains([], [0, 0])
    assert not span_contains([], [1, 0])
    assert span_contains([[1, 2]], [Fraction(-1, 2), -1])
    assert not span_contains([[1, 2]], [1, 0])


def test_rank_ignores_row_order():
    M = bracket_matrix(20)
    rows = M.dense_rows()
    random.Random(3).shuffle(rows)
    shuffled = SparseMatQ.from_rows(rows)
    assert matrix_rank(shuffled) == matrix_rank(M)
    assert kernel_basis(shuffled) == kernel_basis(M)


@pytest.mark.parametrize("w", [16, 22, 24])
def test_rank_matches_sympy(w):
    sympy = pytest.importorskip("sympy")
    M = bracket_matrix(w)
    assert matrix_rank(M) == sympy.Matrix(M.dense_rows()).rank()


def test_cusp_form_dimension():
    assert cusp_form_dimension(4) == 0
    assert cusp_form_dimension(12) == 1
    assert cusp_form_dimension(14) == 0
    assert cusp_form_dimension(26) == 1
    assert cusp_form_dimension(36) == 3
    assert cusp_form_dimension(38) == 2


@pytest.mark.parametrize("w", [2, 7, 13])
def test_cusp_form_dimension_domain(w):
    with pytest.raises(DomainException):
        cusp_form_dimension(w)


@pytest.mark.parametrize("w", [6, 11])
def test_bracket_matrix_domain(w):
    with pytest.raises(DomainException):
        bracket_matrix(w)


def test_relation_vector_rejects_foreign_pairs():
    rel = PairRelation(12, RelationKind.IHARA, {(3, 9): Fraction(1)})
    with pytest.raises(DomainException):
        relation_vector(rel, [(5, 7)])
