"""Noncommutative polynomials over the alphabet {a, b} and the free Lie algebra inside them.

Lie elements live in the free associative algebra with bracket = commutator, so
every identity between Lie elements is a plain equality of coefficient maps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from common.utils.exceptions import DomainException, MixedDegreeException
from lieperiod.arith import Scalar, binomial, format_rational, parse_rational

ALPHABET = ("a", "b")
Word = str


def _check_word(word: Word) -> None:
    if not isinstance(word, str) or not set(word) <= set(ALPHABET):
        raise DomainException(f"Words are strings over {{a, b}}, got {word!r}")


class NCPoly:
    """Finitely supported map Word -> Fraction, kept without zero coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        clean: dict[Word, Fraction] = {}
        for word, coef in (terms or {}).items():
            _check_word(word)
            coef = Fraction(coef)
            if coef:
                clean[word] = coef
        self._terms = clean

    @classmethod
    def _from_dict(cls, terms: dict[Word, Fraction]) -> "NCPoly":
        obj = object.__new__(cls)
        obj._terms = {w: c for w, c in terms.items() if c}
        return obj

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._from_dict({})

    @classmethod
    def word(cls, word: Word, coef: Scalar = 1) -> "NCPoly":
        return cls({word: coef})

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[Word, Fraction]]:
        """Terms in canonical (lexicographic, a < b) order."""
        for word in sorted(self._terms):
            yield word, self._terms[word]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, word: Word) -> Fraction:
        return self._terms.get(word, Fraction(0))

    @property
    def degree(self) -> int | None:
        """Common word length, or None when the element is zero or mixes lengths."""
        lengths = {len(w) for w in self._terms}
        return lengths.pop() if len(lengths) == 1 else None

    def word_lengths(self) -> set[int]:
        return {len(w) for w in self._terms}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "NCPoly") -> "NCPoly":
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly._from_dict(out)

    def __neg__(self) -> "NCPoly":
        return NCPoly._from_dict({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) - c
        return NCPoly._from_dict(out)

    def __mul__(self, other: "NCPoly | Scalar") -> "NCPoly":
        if isinstance(other, NCPoly):
            return concat_product(self, other)
        c = Fraction(other)
        return NCPoly._from_dict({w: c * v for w, v in self._terms.items()})

    def __rmul__(self, other: Scalar) -> "NCPoly":
        c = Fraction(other)
        return NCPoly._from_dict({w: c * v for w, v in self._terms.items()})

    def __truediv__(self, other: Scalar) -> "NCPoly":
        return self * (1 / Fraction(other))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, coef in self.items():
            body = format_rational(abs(coef)) + (f"*{word}" if word else "")
            parts.append(("- " if coef < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self) -> list[dict[str, str]]:
        return [{"word": word, "coef": format_rational(coef)} for word, coef in self.items()]

    @classmethod
    def from_json(cls, terms: Iterable[Mapping[str, str]]) -> "NCPoly":
        out: dict[Word, Fraction] = {}
        for term in terms:
            word = term["word"]
            _check_word(word)
            out[word] = out.get(word, Fraction(0)) + parse_rational(term["coef"])
        return cls(out)

    def __repr__(self) -> str:
        return f"NCPoly({self.to_text()})"


def letter(x: str) -> NCPoly:
    if x not in ALPHABET:
        raise DomainException(f"Unknown letter {x!r}")
    return NCPoly._from_dict({x: Fraction(1)})


def concat_product(f: NCPoly, g: NCPoly) -> NCPoly:
    out: dict[Word, Fraction] = {}
    for u, c in f._terms.items():
        for v, d in g._terms.items():
            w = u + v
            out[w] = out.get(w, 0) + c * d
    return NCPoly._from_dict(out)


def lie_bracket(f: NCPoly, g: NCPoly) -> NCPoly:
    """[f, g] = fg - gf"""
    return concat_product(f, g) - concat_product(g, f)


def ad_power(x: str, m: int, f: NCPoly) -> NCPoly:
    """ad_x^m(f) = [x, [x, ... [x, f]]]"""
    if m < 0:
        raise DomainException(f"ad power must be >= 0, got {m}")
    xs = letter(x)
    for _ in range(m):
        f = lie_bracket(xs, f)
    return f


@cache
def phi(n: int) -> NCPoly:
    """phi_n = ad_a^(n-1)(b) / (n-1)!, so phi_1 = b and phi_2 = ab - ba.

    Written out: the coefficient of a^(n-1-j) b a^j is (-1)^j C(n-1, j) / (n-1)!.
    """
    if n < 1:
        raise DomainException(f"phi_n is defined for n >= 1, got {n}")
    scale = Fraction(1, factorial(n - 1))
    terms = {
        "a" * (n - 1 - j) + "b" + "a" * j: (-1) ** j * binomial(n - 1, j) * scale for j in range(n)
    }
    return NCPoly._from_dict(terms)


@cache
def left_normed(word: Word) -> NCPoly:
    """[[...[x1, x2], x3], ..., xd] for word = x1 x2 ... xd."""
    if not word:
        raise DomainException("The empty word has no bracketing")
    acc = letter(word[0])
    for x in word[1:]:
        acc = lie_bracket(acc, letter(x))
    return acc


def dynkin_map(f: NCPoly) -> NCPoly:
    out: dict[Word, Fraction] = {}
    for word, coef in f._terms.items():
        for w, c in left_normed(word)._terms.items():
            out[w] = out.get(w, 0) + coef * c
    return NCPoly._from_dict(out)


def is_lie_element(f: NCPoly) -> bool:
    """Dynkin criterion: a homogeneous f of degree d >= 1 is Lie iff dynkin_map(f) = d f."""
    if f.is_zero():
        return True
    lengths = f.word_lengths()
    if len(lengths) > 1:
        raise MixedDegreeException(lengths)
    d = lengths.pop()
    if d < 1:
        raise DomainException("Constants are not Lie elements of positive degree")
    return dynkin_map(f) == d * f
