"""Exact rationals, binomials, Bernoulli numbers and dense polynomials over Q.

Bernoulli numbers follow the generating function u/(e^u - 1) = sum b_n u^n/n!,
so b_1 = -1/2. Everything here is exact: no floats anywhere.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Union

from loguru import logger

from common.utils.exceptions import DomainException

Scalar = Union[int, Fraction]

ZERO_DEGREE = -1  # degree of the zero polynomial
_RATIONAL_TEXT = re.compile(r"[+-]?\d+(/\d+)?")

_bernoulli_lock = threading.Lock()
_bernoulli_table: list[Fraction] = [Fraction(1)]


def format_rational(x: Scalar) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of format_rational; decimal and exponent forms are rejected."""
    if not _RATIONAL_TEXT.fullmatch(text.strip()):
        raise DomainException(f"Not an exact rational: {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainException(f"Not an exact rational: {text!r}") from exc


def binomial(n: int, k: int) -> Fraction:
    """C(n, k), and 0 whenever k < 0, k > n or n < 0 (no generalized negative-n binomials)."""
    if k < 0 or n < 0 or k > n:
        return Fraction(0)
    return Fraction(comb(n, k))


def bernoulli_number(n: int) -> Fraction:
    """b_n with b_1 = -1/2, and b_n = 0 for n < 0."""
    if n < 0:
        return Fraction(0)
    with _bernoulli_lock:
        table = _bernoulli_table
        if n >= len(table):
            logger.debug(f"Extending Bernoulli table from {len(table) - 1} to {n}")
        while n >= len(table):
            m = len(table)
            # sum_{k=0}^{m} C(m+1, k) b_k = 0
            acc = sum((comb(m + 1, k) * table[k] for k in range(m)), Fraction(0))
            table.append(-acc / (m + 1))
        return table[n]


@dataclass(frozen=True, slots=True)
class PolyQ:
    """Dense univariate polynomial in t with rational coefficients, index = degree."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar]) -> "PolyQ":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def zero(cls) -> "PolyQ":
        return cls(())

    @classmethod
    def constant(cls, c: Scalar) -> "PolyQ":
        return cls((Fraction(c),))

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "PolyQ":
        if degree < 0:
            raise DomainException(f"Negative degree {degree} does not give a polynomial")
        return cls((Fraction(0),) * degree + (Fraction(c),))

    @classmethod
    def linear(cls, a: Scalar, b: Scalar) -> "PolyQ":
        """a*t + b"""
        return cls((Fraction(b), Fraction(a)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __add__(self, other: "PolyQ | Scalar") -> "PolyQ":
        other = _as_poly(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return PolyQ(tuple(self.coeff(k) + other.coeff(k) for k in range(size)))

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PolyQ | Scalar") -> "PolyQ":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> "PolyQ":
        return _as_poly(other) - self

    def __mul__(self, other: "PolyQ | Scalar") -> "PolyQ":
        if not isinstance(other, PolyQ):
            c = Fraction(other)
            return PolyQ(tuple(c * x for x in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return PolyQ.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return PolyQ(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "PolyQ":
        return self * (1 / Fraction(c))

    def __pow__(self, exponent: int) -> "PolyQ":
        if exponent < 0:
            raise DomainException("Negative powers leave the polynomial ring")
        result = PolyQ.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "PolyQ") -> "PolyQ":
        """self(inner(t)) by Horner's rule."""
        acc = PolyQ.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reversal(self, w: int) -> "PolyQ":
        """t^w * self(1/t); requires deg(self) <= w."""
        if self.degree > w:
            raise DomainException(f"t^{w} P(1/t) is not a polynomial for deg P = {self.degree}")
        padded = self.coeffs + (Fraction(0),) * (w + 1 - len(self.coeffs))
        return PolyQ(tuple(reversed(padded)))

    def parity(self) -> int | None:
        """+1 if only even powers occur (the zero polynomial included), -1 if only odd ones, None if mixed."""
        has_even = any(c != 0 for k, c in enumerate(self.coeffs) if k % 2 == 0)
        has_odd = any(c != 0 for k, c in enumerate(self.coeffs) if k % 2 == 1)
        if has_even and has_odd:
            return None
        return -1 if has_odd else 1

    def primitive_part(self) -> "PolyQ":
        """Scale to coprime integer coefficients with a positive leading coefficient."""
        if not self.coeffs:
            return self
        return PolyQ(tuple(integer_normalize(self.coeffs)))

    def is_proportional(self, other: "PolyQ") -> bool:
        return self.primitive_part() == other.primitive_part()

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            body = format_rational(abs(c))
            if k == 1:
                body += "*t"
            elif k > 1:
                body += f"*t^{k}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"PolyQ({self.to_text()})"


def _as_poly(x: "PolyQ | Scalar") -> PolyQ:
    return x if isinstance(x, PolyQ) else PolyQ.constant(x)


def integer_normalize(values: Iterable[Scalar]) -> list[Fraction]:
    """Clear denominators and content; make the last nonzero entry positive.

    An all-zero input is returned unchanged.
    """
    values = [Fraction(v) for v in values]
    nonzero = [v for v in values if v != 0]
    if not nonzero:
        return values
    denom = lcm(*(v.denominator for v in nonzero))
    ints = [v.numerator * (denom // v.denominator) for v in values]
    content = gcd(*ints)
    if nonzero[-1] < 0:
        content = -content
    return [Fraction(v // content) for v in ints]


def bernoulli_polynomial(n: int) -> PolyQ:
    """B_n(t) = sum_{i=0}^{n} C(n, i) b_i t^(n-i)."""
    if n < 0:
        raise DomainException(f"Bernoulli polynomial index must be >= 0, got {n}")
    return PolyQ(tuple(binomial(n, n - k) * bernoulli_number(n - k) for k in range(n + 1)))
