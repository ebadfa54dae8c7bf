"""Special derivations D_f, the Ihara bracket, and the closed forms relating them to Lie brackets.

Convention: D_f(a) = [f, a] and D_f(b) = 0, extended by the Leibniz rule over
concatenation, so that D_{phi_n}(a) = -n phi_{n+1}. ``sign=-1`` selects the
opposite sign D_f(a) = [a, f], under which the closed forms fail.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from typing import Callable, Literal, Mapping

from common.utils.exceptions import DomainException, MixedDegreeException
from lieperiod.arith import bernoulli_number, binomial
from lieperiod.freelie import NCPoly, letter, lie_bracket, phi

Sign = Literal[1, -1]
Pair = tuple[int, int]
PairBracket = Callable[[int, int], NCPoly]


def _require_homogeneous(f: NCPoly) -> None:
    lengths = f.word_lengths()
    if len(lengths) > 1:
        raise MixedDegreeException(lengths)
    if lengths == {0}:
        raise DomainException("D_f needs f of degree >= 1")


def special_derivation(f: NCPoly, v: NCPoly, *, sign: Sign = 1) -> NCPoly:
    """D_f(v): replace each letter a of each word of v by sign * [f, a]."""
    _require_homogeneous(f)
    image_of_a = lie_bracket(f, letter("a")) * sign
    out: dict[str, Fraction] = {}
    for word, coef in v.terms.items():
        for i, x in enumerate(word):
            if x != "a":
                continue
            prefix, suffix = word[:i], word[i + 1 :]
            for u, c in image_of_a.terms.items():
                w = prefix + u + suffix
                out[w] = out.get(w, 0) + coef * c
    return NCPoly(out)


def ihara_bracket(f: NCPoly, g: NCPoly, *, sign: Sign = 1) -> NCPoly:
    """{f, g} = [f, g] + D_g(f) - D_f(g)"""
    return lie_bracket(f, g) + special_derivation(g, f, sign=sign) - special_derivation(f, g, sign=sign)


def special_derivation_commutator(f: NCPoly, g: NCPoly, v: NCPoly, *, sign: Sign = 1) -> NCPoly:
    """D_g(D_f(v)) - D_f(D_g(v)); equals D_{{f,g}}(v) under the default sign."""
    return special_derivation(g, special_derivation(f, v, sign=sign), sign=sign) - special_derivation(
        f, special_derivation(g, v, sign=sign), sign=sign
    )


@cache
def phi_lie(i: int, j: int) -> NCPoly:
    return lie_bracket(phi(i), phi(j))


@cache
def phi_derivation(i: int, j: int, sign: Sign = 1) -> NCPoly:
    """D_{phi_i}(phi_j)"""
    return special_derivation(phi(i), phi(j), sign=sign)


@cache
def phi_ihara(i: int, j: int, sign: Sign = 1) -> NCPoly:
    return ihara_bracket(phi(i), phi(j), sign=sign)


def evaluate_pairs(coeffs: Mapping[Pair, Fraction], bracket: PairBracket) -> NCPoly:
    """sum of c * bracket(i, j) over the family."""
    total = NCPoly.zero()
    for (i, j), c in sorted(coeffs.items()):
        total = total + c * bracket(i, j)
    return total


def _check_positive(**indices: int) -> None:
    for name, value in indices.items():
        if value < 1:
            raise DomainException(f"{name} must be >= 1, got {value}")


def d_phi_closed(n: int, p: int) -> NCPoly:
    """D_{phi_n}(phi_p) = sum_{k=1}^{p-1} C(n+p-1-k, p-k) [phi_k, phi_{n+p-k}]"""
    _check_positive(n=n, p=p)
    coeffs = {(k, n + p - k): binomial(n + p - 1 - k, p - k) for k in range(1, p)}
    return evaluate_pairs(coeffs, phi_lie)


def ihara_closed_coefficients(n: int, p: int) -> dict[Pair, Fraction]:
    """Coefficients of [phi_k, phi_{n+p-k}] in {phi_n, phi_p}."""
    _check_positive(n=n, p=p)
    coeffs = {}
    for k in range(1, max(n - 1, p - 1) + 1):
        c = binomial(n + p - 1 - k, n - k) - binomial(n + p - 1 - k, p - k)
        if c:
            coeffs[(k, n + p - k)] = c
    return coeffs


def ihara_bracket_closed(n: int, p: int) -> NCPoly:
    return evaluate_pairs(ihara_closed_coefficients(n, p), phi_lie)


def dpcroch_coefficients(n: int, p: int) -> dict[Pair, Fraction]:
    """[phi_n, phi_p] = sum c * D_{phi_i}(phi_j) over the returned {(i, j): c}.

    c = -C(n-2+k, n-2) b_k / (n-1) on the pair (n-1+k, p+1-k), k = 0..p.
    Pairs with j = 1 are kept even though D(phi_1) vanishes.
    """
    if n < 2:
        raise DomainException(f"The derivation expansion of [phi_n, phi_p] needs n >= 2, got n={n}")
    _check_positive(p=p)
    coeffs = {}
    for k in range(p + 1):
        c = -binomial(n - 2 + k, n - 2) * bernoulli_number(k) / (n - 1)
        if c:
            coeffs[(n - 1 + k, p + 1 - k)] = c
    return coeffs


def bracket_from_derivations(n: int, p: int, *, sign: Sign = 1) -> NCPoly:
    """[phi_n, phi_p] rebuilt from special derivation values."""
    return evaluate_pairs(dpcroch_coefficients(n, p), lambda i, j: phi_derivation(i, j, sign))


def ltop_coefficients(m: int, k: int) -> dict[Pair, Fraction]:
    """[phi_m, phi_k] = sum c * {phi_i, phi_j} over the returned {(i, j): c}, for even m.

    c = C(k-1+r, k-1) b_r / (k-1+r) on the pair (m-r+1, k+r-1), r = 0..m. The
    r = m term multiplies {phi_1, phi_{k+m-1}} = 0 and is kept.
    """
    if m < 2 or m % 2:
        raise DomainException(f"The Ihara expansion of [phi_m, phi_k] is stated for even m >= 2, got m={m}")
    if k < 2:
        raise DomainException(f"The Ihara expansion of [phi_m, phi_k] needs k >= 2, got k={k}")
    coeffs = {}
    for r in range(m + 1):
        c = binomial(k - 1 + r, k - 1) * bernoulli_number(r) / (k - 1 + r)
        if c:
            coeffs[(m - r + 1, k + r - 1)] = c
    return coeffs


def bracket_from_ihara(m: int, k: int, *, sign: Sign = 1) -> NCPoly:
    """[phi_m, phi_k] rebuilt from Ihara brackets (m even)."""
    return evaluate_pairs(ltop_coefficients(m, k), lambda i, j: phi_ihara(i, j, sign))
