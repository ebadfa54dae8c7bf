"""Period polynomials: the weight-w slash action, the period relations, Kohnen-Zagier blocks
and the substitution {phi_i, phi_j} -> (t^(i-1) - t^(j-1)) / ((i-1)! (j-1)!).

The action is computed on the homogenization p(X, Y) = Y^w P(X/Y):
(P|M)(t) = sum_k c_k (a t + b)^k (c t + d)^(w-k), so only polynomial
arithmetic is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from loguru import logger

from common.utils.exceptions import DomainException
from lieperiod.arith import PolyQ, bernoulli_polynomial, format_rational
from lieperiod.ihara import Sign, dpcroch_coefficients
from lieperiod.relations import PairRelation, RelationKind, dpcroch2_terms


@dataclass(frozen=True, slots=True)
class IntMat2:
    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, exponent: int) -> "IntMat2":
        if exponent < 0:
            raise DomainException("Only nonnegative powers of integer matrices are supported")
        result = IDENTITY
        for _ in range(exponent):
            result = result @ self
        return result


IDENTITY = IntMat2(1, 0, 0, 1)
S = IntMat2(0, -1, 1, 0)
U = IntMat2(1, -1, 1, 0)
U2 = U @ U  # (0, -1; 1, -1)


@dataclass(frozen=True, slots=True)
class WeightedPoly:
    poly: PolyQ
    w: int

    def __post_init__(self) -> None:
        if self.w < 2 or self.w % 2:
            raise DomainException(f"Period polynomial weight must be even and >= 2, got {self.w}")
        if self.poly.degree > self.w:
            raise DomainException(f"Degree {self.poly.degree} exceeds weight {self.w}")

    def coefficients(self) -> list[Fraction]:
        """All w + 1 coefficients, index = degree."""
        return [self.poly.coeff(k) for k in range(self.w + 1)]

    def to_text(self) -> str:
        return self.poly.to_text()

    def to_json(self) -> dict:
        return {"w": self.w, "coeffs": [format_rational(c) for c in self.coefficients()]}


def slash_action(P: WeightedPoly, M: IntMat2) -> PolyQ:
    """(P|M)(t) for M = (a, b; c, d); a right action: (P|M1)|M2 = P|(M1 M2)."""
    numer = PolyQ.linear(M.a, M.b)
    denom = PolyQ.linear(M.c, M.d)
    result = PolyQ.zero()
    for k, coef in enumerate(P.poly.coeffs):
        if coef:
            result = result + coef * numer**k * denom ** (P.w - k)
    return result


def is_period_polynomial(P: WeightedPoly) -> bool:
    """P + P|S = 0 and P + P|U + P|U^2 = 0."""
    two_term = P.poly + slash_action(P, S)
    three_term = P.poly + slash_action(P, U) + slash_action(P, U2)
    if two_term or three_term:
        logger.debug(f"Not a period polynomial of weight {P.w}: two-term {two_term.to_text()}, three-term {three_term.to_text()}")
        return False
    return True


def kz_matching_sign(n: int) -> Sign:
    """Sign for which P^sign_{n;k} is a period polynomial: + for odd n, - for even n."""
    return 1 if n % 2 else -1


def kz_building_block(n: int, k: int, sign: Sign) -> PolyQ:
    """P^sign_{n;k}(t) for w = k - 2, p = w - n:

    sign/(n+1) [B_{n+1}(t) - sign t^w B_{n+1}(1/t)] + 1/(p+1) [B_{p+1}(t) - sign t^w B_{p+1}(1/t)]
    """
    w = k - 2
    if k % 2 or w < 2:
        raise DomainException(f"Kohnen-Zagier blocks need an even k >= 4, got {k}")
    if not 1 <= n <= w - 1:
        raise DomainException(f"n must lie in [1, {w - 1}] for k = {k}, got {n}")
    p = w - n

    def half(m: int) -> PolyQ:
        bern = bernoulli_polynomial(m)
        return (bern - sign * bern.reversal(w)) / m

    return sign * half(n + 1) + half(p + 1)


def g_special(n: int, p: int, eps: Sign) -> PolyQ:
    """G_{n,p} = 1/((n-1)! (p-1)!) * 1/p * (eps B_p(t) - t^(n+p-2) B_p(1/t))."""
    if n < 2:
        raise DomainException(f"G_(n,p) needs n >= 2, got n={n}")
    if p < 1:
        raise DomainException(f"G_(n,p) needs p >= 1, got p={p}")
    bern = bernoulli_polynomial(p)
    scale = Fraction(1, factorial(n - 1) * factorial(p - 1) * p)
    return (eps * bern - bern.reversal(n + p - 2)) * scale


def specialized_f(i: int, j: int, eps: Sign) -> PolyQ:
    """F_{i,j} = (t^(i-1) - eps t^(j-1)) / ((i-1)! (j-1)!)"""
    if i < 1 or j < 1:
        raise DomainException(f"F_(i,j) needs i, j >= 1, got ({i}, {j})")
    scale = Fraction(1, factorial(i - 1) * factorial(j - 1))
    return (PolyQ.monomial(i - 1) - eps * PolyQ.monomial(j - 1)) * scale


def g_from_specialization(n: int, p: int, eps: Sign) -> PolyQ:
    """G_{n,p} rebuilt from the F_{i,j} through the derivation expansion of [phi_n, phi_p]."""
    total = PolyQ.zero()
    for (i, j), c in dpcroch_coefficients(n, p).items():
        total = total + c * specialized_f(i, j, eps)
    return total


def angle_bracket(f: PolyQ, g: PolyQ) -> PolyQ:
    """<f, g> = f(t) g(1) - f(1) g(t)"""
    return f * g(1) - f(1) * g


def _pair_monomial(i: int, j: int) -> PolyQ:
    """(t^(i-1) - t^(j-1)) / ((i-1)! (j-1)!)"""
    return specialized_f(i, j, 1)


def substitute_relation(rel: PairRelation) -> WeightedPoly:
    if rel.kind is not RelationKind.IHARA:
        raise DomainException(f"Only Ihara-bracket relations map to period polynomials, got kind {rel.kind.value}")
    for i, j in rel.pairs:
        if i < 3 or j < 3 or i % 2 == 0 or j % 2 == 0:
            raise DomainException(f"Pair ({i}, {j}) is not a pair of odd indices >= 3")
    total = PolyQ.zero()
    for (i, j), c in rel.coeffs.items():
        total = total + c * _pair_monomial(i, j)
    return WeightedPoly(total, rel.weight - 2)


def derivation_period_polynomial(n: int, p: int) -> PolyQ:
    """Substitute D_{phi_i}(phi_j) -> (t^(i-1) - t^(j-1)) / ((i-1)! (j-1)!) in the raw
    antisymmetry relation of [phi_n, phi_p], j = 1 terms included.

    Equals -(G_{n,p} + G_{p,n}) at eps = +1; a period polynomial of weight n + p - 2
    when n and p are even.
    """
    total = PolyQ.zero()
    for (i, j), c in dpcroch2_terms(n, p).items():
        total = total + c * _pair_monomial(i, j)
    return total
