import random
from fractions import Fraction

import pytest

from common.utils.exceptions import DomainException, MixedDegreeException
from lieperiod.freelie import NCPoly, letter, lie_bracket, phi
from lieperiod.ihara import (
    bracket_from_derivations,
    bracket_from_ihara,
    d_phi_closed,
    dpcroch_coefficients,
    ihara_bracket,
    ihara_bracket_closed,
    ihara_closed_coefficients,
    ltop_coefficients,
    phi_lie,
    special_derivation,
    special_derivation_commutator,
)

PAIRS_UP_TO_14 = [(n, w - n) for w in range(2, 15) for n in range(1, w)]


def _random_lie_poly(rng: random.Random, degree: int) -> NCPoly:
    """A random combination of brackets of the phi_n, homogeneous of the given degree."""
    if degree == 1:
        return Fraction(rng.randint(1, 4)) * letter(rng.choice("ab"))
    total = NCPoly.zero()
    for _ in range(2):
        k = rng.randint(1, degree - 1)
        total = total + Fraction(rng.randint(-3, 3)) * lie_bracket(phi(k), phi(degree - k))
    return total + phi(degree)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_derivation_of_a(n):
    assert special_derivation(phi(n), letter("a")) == -n * phi(n + 1)


def test_derivation_of_b_vanishes():
    for n in range(1, 6):
        assert special_derivation(phi(n), letter("b")).is_zero()


def test_derivation_phi2_of_phi2():
    assert special_derivation(phi(2), phi(2)) == 2 * phi_lie(1, 3)


def test_derivation_needs_homogeneous_f():
    with pytest.raises(MixedDegreeException):
        special_derivation(phi(1) + phi(2), phi(3))
    with pytest.raises(DomainException):
        special_derivation(NCPoly({"": 1}), phi(3))


def test_derivation_law_on_random_inputs():
    rng = random.Random(2024)
    for _ in range(15):
        f = _random_lie_poly(rng, rng.randint(1, 3))
        u = _random_lie_poly(rng, rng.randint(1, 3))
        v = _random_lie_poly(rng, rng.randint(1, 2))
        lhs = special_derivation(f, lie_bracket(u, v))
        rhs = lie_bracket(special_derivation(f, u), v) + lie_bracket(u, special_derivation(f, v))
        assert lhs == rhs


@pytest.mark.parametrize("n, p", PAIRS_UP_TO_14)
def test_d_phi_closed_matches_brute_force(n, p):
    assert d_phi_closed(n, p) == special_derivation(phi(n), phi(p))


@pytest.mark.parametrize("n, p", PAIRS_UP_TO_14)
def test_ihara_bracket_closed_matches_brute_force(n, p):
    assert ihara_bracket_closed(n, p) == ihara_bracket(phi(n), phi(p))


def test_closed_form_examples():
    assert d_phi_closed(4, 1).is_zero()
    assert d_phi_closed(1, 3) == phi_lie(1, 3)
    assert d_phi_closed(2, 2) == 2 * phi_lie(1, 3)
    assert ihara_bracket_closed(3, 3).is_zero()
    assert ihara_bracket(phi(2), phi(3)) == -phi_lie(2, 3)
    assert ihara_closed_coefficients(3, 5) == {(2, 6): -5, (3, 5): -5, (4, 4): -3}
    assert ihara_bracket_closed(3, 5) == -5 * phi_lie(2, 6) - 5 * phi_lie(3, 5)


def test_sign_convention_is_the_one_that_makes_the_closed_form_hold():
    flipped = [(n, p) for n, p in PAIRS_UP_TO_14 if n + p <= 6 and d_phi_closed(n, p) != special_derivation(phi(n), phi(p), sign=-1)]
    assert (2, 2) in flipped
    assert all(d_phi_closed(n, p) == special_derivation(phi(n), phi(p)) for n, p in PAIRS_UP_TO_14 if n + p <= 6)


@pytest.mark.parametrize("m", range(1, 13))
def test_ihara_bracket_with_phi1_vanishes(m):
    assert ihara_bracket(phi(1), phi(m)).is_zero()


def test_ihara_bracket_is_antisymmetric_and_satisfies_jacobi():
    gens = [phi(n) for n in range(2, 6)]
    for f in gens:
        assert ihara_bracket(f, f).is_zero()
        for g in gens:
            assert ihara_bracket(f, g) == -ihara_bracket(g, f)
            for h in gens:
                jacobi = (
                    ihara_bracket(f, ihara_bracket(g, h))
                    + ihara_bracket(g, ihara_bracket(h, f))
                    + ihara_bracket(h, ihara_bracket(f, g))
                )
                assert jacobi.is_zero()


def test_lie_bracket_jacobi_on_generators():
    gens = [phi(n) for n in range(2, 6)]
    for f in gens:
        for g in gens:
            for h in gens:
                jacobi = lie_bracket(f, lie_bracket(g, h)) + lie_bracket(g, lie_bracket(h, f)) + lie_bracket(h, lie_bracket(f, g))
                assert jacobi.is_zero()


def test_derivation_commutator_is_derivation_of_ihara_bracket():
    gens = [phi(n) for n in range(2, 6)]
    targets = [letter("a"), letter("b"), phi(3)]
    for f in gens:
        for g in gens:
            fg = ihara_bracket(f, g)
            for v in targets:
                assert special_derivation_commutator(f, g, v) == special_derivation(fg, v)


@pytest.mark.parametrize("n, p", [(n, p) for n, p in PAIRS_UP_TO_14 if n >= 2])
def test_bracket_from_derivations(n, p):
    assert bracket_from_derivations(n, p) == phi_lie(n, p)


def test_bracket_from_derivations_examples_and_domain():
    assert bracket_from_derivations(2, 2).is_zero()
    assert bracket_from_derivations(4, 1) == phi_lie(4, 1)
    with pytest.raises(DomainException):
        bracket_from_derivations(1, 3)


@pytest.mark.parametrize("m, k", [(m, w - m) for w in range(4, 15) for m in range(2, w - 1, 2)])
def test_bracket_from_ihara(m, k):
    assert bracket_from_ihara(m, k) == phi_lie(m, k)


def test_bracket_from_ihara_domain():
    with pytest.raises(DomainException):
        bracket_from_ihara(3, 4)
    with pytest.raises(DomainException):
        bracket_from_ihara(2, 1)


def _display(m: int, k: int) -> dict:
    """The printed expansions of [phi_m, phi_k] in Ihara brackets."""
    F = Fraction
    tables = {
        2: {(3, k - 1): F(1, k - 1), (2, k): F(-1, 2)},
        4: {(3, k + 1): F(k, 12), (4, k): F(-1, 2), (5, k - 1): F(1, k - 1)},
        6: {
            (3, k + 3): F(-(k + 2) * (k + 1) * k, 720),
            (5, k + 1): F(k, 12),
            (6, k): F(-1, 2),
            (7, k - 1): F(1, k - 1),
        },
        8: {
            (3, k + 5): F((k + 4) * (k + 3) * (k + 2) * (k + 1) * k, 30240),
            (5, k + 3): F(-(k + 2) * (k + 1) * k, 720),
            (7, k + 1): F(k, 12),
            (8, k): F(-1, 2),
            (9, k - 1): F(1, k - 1),
        },
    }
    return tables[m]


@pytest.mark.parametrize("m", [2, 4, 6, 8])
@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_printed_expansions_in_ihara_brackets(m, k):
    coeffs = {pair: c for pair, c in ltop_coefficients(m, k).items() if pair[0] != 1}
    assert coeffs == _display(m, k)


@pytest.mark.parametrize("m", [2, 4, 6])
def test_top_term_multiplies_a_vanishing_bracket(m):
    coeffs = ltop_coefficients(m, 3)
    assert (1, m + 2) in coeffs
    assert ihara_bracket(phi(1), phi(m + 2)).is_zero()


@pytest.mark.parametrize("m", [2, 4, 6, 8])
@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_ihara_expansion_mirrors_derivation_expansion(m, k):
    ltop = ltop_coefficients(m, k)
    dpcroch = dpcroch_coefficients(k, m)
    assert len(ltop) == len(dpcroch)
    for (i, j), c in ltop.items():
        assert dpcroch[(j, i)] == -c


def test_derivation_expansion_coefficients():
    assert dpcroch_coefficients(2, 2) == {(1, 3): -1, (2, 2): Fraction(1, 2), (3, 1): Fraction(-1, 6)}
