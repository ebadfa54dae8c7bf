"""Truncated generating series Phi(x) = sum phi_n x^(n-1) and the identities they satisfy.

A series is a mapping from the bidegree (i, j) of x^i y^j to its NCPoly
coefficient; everything above total degree ``order`` is discarded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Mapping

from loguru import logger

from common.utils.exceptions import DomainException
from lieperiod.arith import binomial
from lieperiod.freelie import NCPoly, lie_bracket, phi
from lieperiod.ihara import Sign, ihara_bracket, special_derivation

SeriesIdentity = Literal["sdphi", "ihlie", "f2g"]
SERIES_IDENTITIES: tuple[SeriesIdentity, ...] = ("sdphi", "ihlie", "f2g")

Bidegree = tuple[int, int]
Product = Callable[[NCPoly, NCPoly], NCPoly]


@dataclass(frozen=True)
class TruncatedSeries:
    order: int
    terms: Mapping[Bidegree, NCPoly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        kept = {deg: c for deg, c in self.terms.items() if c and sum(deg) <= self.order}
        object.__setattr__(self, "terms", dict(sorted(kept.items())))

    @classmethod
    def phi_x(cls, order: int) -> "TruncatedSeries":
        return cls(order, {(n - 1, 0): phi(n) for n in range(1, order + 2)})

    @classmethod
    def phi_y(cls, order: int) -> "TruncatedSeries":
        return cls(order, {(0, n - 1): phi(n) for n in range(1, order + 2)})

    @classmethod
    def phi_sum(cls, order: int) -> "TruncatedSeries":
        """Phi(x + y)"""
        terms = {}
        for d in range(order + 1):
            for i in range(d + 1):
                terms[(i, d - i)] = binomial(d, i) * phi(d + 1)
        return cls(order, terms)

    def coefficient(self, deg: Bidegree) -> NCPoly:
        return self.terms.get(deg, NCPoly.zero())

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        out = dict(self.terms)
        for deg, c in other.terms.items():
            out[deg] = out[deg] + c if deg in out else c
        return TruncatedSeries(min(self.order, other.order), out)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, {deg: -c for deg, c in self.terms.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def pair(self, other: "TruncatedSeries", product: Product) -> "TruncatedSeries":
        """Cauchy product of the two series with a bilinear product on the coefficients."""
        order = min(self.order, other.order)
        out: dict[Bidegree, NCPoly] = {}
        for (i1, j1), f in self.terms.items():
            for (i2, j2), g in other.terms.items():
                deg = (i1 + i2, j1 + j2)
                if sum(deg) > order:
                    continue
                value = product(f, g)
                out[deg] = out[deg] + value if deg in out else value
        return TruncatedSeries(order, out)

    def shear(self) -> "TruncatedSeries":
        """Substitute x -> x + y."""
        out: dict[Bidegree, NCPoly] = {}
        for (i, j), c in self.terms.items():
            for r in range(i + 1):
                deg = (r, i - r + j)
                value = binomial(i, r) * c
                out[deg] = out[deg] + value if deg in out else value
        return TruncatedSeries(self.order, out)

    def mismatches(self, other: "TruncatedSeries") -> list[Bidegree]:
        degrees = sorted(set(self.terms) | set(other.terms))
        return [deg for deg in degrees if self.coefficient(deg) != other.coefficient(deg)]


def _sides(which: SeriesIdentity, order: int, sign: Sign) -> tuple[TruncatedSeries, TruncatedSeries]:
    x, y, s = TruncatedSeries.phi_x(order), TruncatedSeries.phi_y(order), TruncatedSeries.phi_sum(order)

    def derivation(f: NCPoly, v: NCPoly) -> NCPoly:
        return special_derivation(f, v, sign=sign)

    def ihara(f: NCPoly, g: NCPoly) -> NCPoly:
        return ihara_bracket(f, g, sign=sign)

    if which == "sdphi":
        # D_{Phi(x)} Phi(y) = [Phi(x), Phi(y)] + [Phi(y), Phi(x+y)]
        return x.pair(y, derivation), x.pair(y, lie_bracket) + y.pair(s, lie_bracket)
    if which == "ihlie":
        # {Phi(x), Phi(y)} = [Phi(y), Phi(x)] + [Phi(x) - Phi(y), Phi(x+y)]
        return x.pair(y, ihara), y.pair(x, lie_bracket) + (x - y).pair(s, lie_bracket)
    if which == "f2g":
        # F(x, y) = G(x, y) - G(x+y, y)
        g = x.pair(y, lie_bracket)
        return x.pair(y, derivation), g - g.shear()
    raise DomainException(f"Unknown series identity {which!r}, expected one of {SERIES_IDENTITIES}")


def series_identity_mismatches(which: SeriesIdentity, order: int, *, sign: Sign = 1) -> list[Bidegree]:
    """Bidegrees (n-1, p-1) of total degree <= order where the two sides differ."""
    if order < 2:
        raise DomainException(f"Series truncation order must be >= 2, got {order}")
    lhs, rhs = _sides(which, order, sign)
    bad = lhs.mismatches(rhs)
    logger.debug(f"Series identity {which} at order {order}: {len(lhs.terms)} coefficients, {len(bad)} mismatches")
    return bad


def verify_series_identity(which: SeriesIdentity, order: int, *, sign: Sign = 1) -> bool:
    return not series_identity_mismatches(which, order, sign=sign)
