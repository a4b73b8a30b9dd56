"""Weierstrass models ``y^2 = 4x^3 - g2(t) x - g3(t)`` over the projective
line and the Kodaira types of their singular fibres.

Everything is exact: places are monic irreducible factors of the
discriminant over the rationals (plus the point at infinity), and vanishing
orders come from repeated polynomial division.  No roots are ever computed
numerically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping, NamedTuple, Optional

from .upoly import Poly, factor_irreducible, gcd, is_squarefree, parse_coeffs

INF = float("inf")


class SurfaceError(ValueError):
    """Base class for precondition failures on Weierstrass data."""


class DegenerateModelError(SurfaceError):
    pass


class NonMinimalModelError(SurfaceError):
    pass


class ClassificationError(SurfaceError):
    pass


@dataclass(frozen=True)
class WeierstrassModel:
    g2: Poly
    g3: Poly
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise SurfaceError(f"degree parameter n must be a positive integer, got {self.n!r}")
        if self.g2.degree > 4 * self.n:
            raise SurfaceError(f"deg g2 = {self.g2.degree} exceeds 4n = {4 * self.n}")
        if self.g3.degree > 6 * self.n:
            raise SurfaceError(f"deg g3 = {self.g3.degree} exceeds 6n = {6 * self.n}")
        if self.disc.is_zero():
            raise DegenerateModelError("discriminant vanishes identically (degenerate model)")

    @cached_property
    def disc(self) -> Poly:
        return self.g2 ** 3 - 27 * self.g3 ** 2

    @classmethod
    def from_json(cls, data: Mapping | str) -> "WeierstrassModel":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, Mapping) or set(data) != {"n", "g2", "g3"}:
            raise SurfaceError("surface JSON must be an object with exactly the keys n, g2, g3")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise SurfaceError("surface JSON: 'n' must be an integer")
        try:
            g2 = parse_coeffs(data["g2"])
            g3 = parse_coeffs(data["g3"])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise SurfaceError(f"surface JSON: {exc}") from None
        return cls(g2, g3, n)

    def to_json(self) -> dict:
        return {"n": self.n, "g2": self.g2.to_json(), "g3": self.g3.to_json()}


def universal_family() -> WeierstrassModel:
    """``g2 = 27 t (t-1)^3``, ``g3 = 27 t (t-1)^5`` with ``j(t) = t``."""
    t = Poly.t()
    return WeierstrassModel(27 * t * (t - 1) ** 3, 27 * t * (t - 1) ** 5, 1)


@dataclass(frozen=True)
class Place:
    """A finite place (monic irreducible factor) or the point at infinity.

    A factor of degree ``d`` stands for its ``d`` conjugate roots, which share
    all vanishing data.
    """

    factor: Optional[Poly] = None

    @property
    def is_infinity(self) -> bool:
        return self.factor is None

    @property
    def degree(self) -> int:
        """Number of geometric points represented."""
        return 1 if self.factor is None else self.factor.degree

    def key(self) -> str:
        return "inf" if self.factor is None else str(self.factor)

    def label(self) -> str:
        if self.factor is None:
            return "t=inf"
        if self.factor.degree == 1:
            return f"t={-self.factor[0]}"
        return f"{self.factor}=0"

    def sort_key(self) -> tuple:
        return (self.is_infinity, self.key())

    def __str__(self) -> str:
        return self.label()


INFINITY = Place(None)


class PlaceOrders(NamedTuple):
    place: Place
    ord_g2: float | int
    ord_g3: float | int
    ord_disc: int


@dataclass(frozen=True)
class SingularFiber:
    place: Place
    ord_g2: float | int
    ord_g3: float | int
    ord_disc: int
    kodaira_type: str


class MinimalityReport(NamedTuple):
    minimal: bool
    offending: list

    def __bool__(self) -> bool:
        return self.minimal


def discriminant(m: WeierstrassModel) -> Poly:
    """``g2^3 - 27 g3^2``; raises if it vanishes identically."""
    disc = m.disc
    if disc.is_zero():
        raise DegenerateModelError("discriminant vanishes identically (degenerate model)")
    return disc


def j_map(m: WeierstrassModel) -> tuple[Poly, Poly]:
    """``g2^3 / disc`` as a reduced fraction with monic denominator."""
    disc = discriminant(m)
    num = m.g2 ** 3
    if num.is_zero():
        return Poly(), Poly([1])
    g = gcd(num, disc)
    num, den = num.exact_div(g), disc.exact_div(g)
    scale = 1 / den.lead
    return num * scale, den * scale


def _ord_inf(p: Poly, bound: int) -> float | int:
    return INF if p.is_zero() else bound - p.degree


def places_and_orders(m: WeierstrassModel) -> list[PlaceOrders]:
    """Vanishing orders of ``(g2, g3, disc)`` at every finite place where the
    discriminant vanishes, followed by the place at infinity."""
    return list(_places_and_orders(m))


@lru_cache(maxsize=1024)
def _places_and_orders(m: WeierstrassModel) -> tuple[PlaceOrders, ...]:
    disc = discriminant(m)
    out = []
    for factor, mult in factor_irreducible(disc):
        out.append(PlaceOrders(Place(factor), m.g2.valuation(factor), m.g3.valuation(factor), mult))
    out.append(
        PlaceOrders(
            INFINITY,
            _ord_inf(m.g2, 4 * m.n),
            _ord_inf(m.g3, 6 * m.n),
            12 * m.n - disc.degree,
        )
    )
    return tuple(out)


def kodaira_type(a: float | int, b: float | int, d: int) -> str:
    """Kodaira symbol from the orders of ``g2``, ``g3`` and the discriminant."""
    if a >= 4 and b >= 6:
        raise NonMinimalModelError(f"orders ({a}, {b}, {d}) describe a non-minimal place")
    if d == 0:
        return "I_0"
    if a == 0 and b == 0:
        return f"I_{d}"
    if a >= 1 and b == 1 and d == 2:
        return "II"
    if a == 1 and b >= 2 and d == 3:
        return "III"
    if a >= 2 and b == 2 and d == 4:
        return "IV"
    if a >= 2 and b >= 3 and d == 6:
        return "I_0*"
    if a == 2 and b == 3 and d >= 7:
        return f"I_{d - 6}*"
    if a >= 3 and b == 4 and d == 8:
        return "IV*"
    if a == 3 and b >= 5 and d == 9:
        return "III*"
    if a >= 4 and b == 5 and d == 10:
        return "II*"
    raise ClassificationError(f"orders ({a}, {b}, {d}) match no Kodaira type")


_STAR_SWAP = {"II": "IV*", "III": "III*", "IV": "II*", "IV*": "II", "III*": "III", "II*": "IV"}


def twist_partner(symbol: str) -> str:
    """Type obtained after a quadratic twist at the place (``I_n <-> I_n*``)."""
    if symbol in _STAR_SWAP:
        return _STAR_SWAP[symbol]
    if symbol.endswith("*"):
        return symbol[:-1]
    return symbol + "*"


def minimality_check(m: WeierstrassModel) -> MinimalityReport:
    """A model is minimal unless some place has ``ord g2 >= 4`` and ``ord g3 >= 6``."""
    bad = [po.place for po in places_and_orders(m) if po.ord_g2 >= 4 and po.ord_g3 >= 6]
    return MinimalityReport(not bad, bad)


def kodaira_classify(m: WeierstrassModel) -> list[SingularFiber]:
    """Singular fibres sorted by place (finite places by factor string, then infinity)."""
    orders = places_and_orders(m)
    bad = [po.place.label() for po in orders if po.ord_g2 >= 4 and po.ord_g3 >= 6]
    if bad:
        raise NonMinimalModelError(f"model is not minimal at {', '.join(bad)}")
    fibers = []
    for po in sorted(orders, key=lambda po: po.place.sort_key()):
        if po.ord_disc >= 1:
            symbol = kodaira_type(po.ord_g2, po.ord_g3, po.ord_disc)
            fibers.append(SingularFiber(po.place, po.ord_g2, po.ord_g3, po.ord_disc, symbol))
    return fibers


def fiber_types(m: WeierstrassModel) -> dict[str, str]:
    """Map from place label to Kodaira symbol, e.g. ``{"t=0": "II", ...}``."""
    return {f.place.label(): f.kodaira_type for f in kodaira_classify(m)}


def type_at(m: WeierstrassModel, place: Place) -> str:
    """Kodaira symbol at ``place``, ``"I_0"`` for a smooth fibre."""
    for po in places_and_orders(m):
        if po.place == place:
            return kodaira_type(po.ord_g2, po.ord_g3, po.ord_disc)
    if place.is_infinity:
        raise AssertionError("infinity is always listed")
    return "I_0"


def twist_places(q: Poly) -> list[Place]:
    """Places where a twist by ``q`` acts: the roots of ``q`` and, for linear
    ``q``, the point at infinity."""
    places = [Place(f) for f, _ in factor_irreducible(q)]
    if q.degree == 1:
        places.append(INFINITY)
    return places


def quadratic_twist(m: WeierstrassModel, q: Poly) -> WeierstrassModel:
    """Replace ``(g2, g3, n)`` by ``(g2 q^2, g3 q^3, n + 1)``."""
    if q.degree not in (1, 2):
        raise SurfaceError("twist polynomial must have degree 1 or 2")
    if not is_squarefree(q):
        raise SurfaceError(f"twist polynomial {q} is not squarefree")
    return WeierstrassModel(m.g2 * q ** 2, m.g3 * q ** 3, m.n + 1)


def minimal_model(m: WeierstrassModel) -> WeierstrassModel:
    """Strip ``(f^4, f^6)`` from every non-minimal place.

    Dividing by a finite factor ``f`` lowers ``n`` by ``deg f`` so that the
    orders at infinity stay put; a non-minimal infinity lowers ``n`` by one.
    """
    discriminant(m)
    g2, g3, n = m.g2, m.g3, m.n
    changed = True
    while changed:
        changed = False
        current = WeierstrassModel(g2, g3, n) if n >= 1 else None
        if current is None:
            raise SurfaceError("minimal model would have n = 0 (isotrivial constant family)")
        for po in places_and_orders(current):
            if po.ord_g2 >= 4 and po.ord_g3 >= 6:
                if po.place.is_infinity:
                    n -= 1
                else:
                    f = po.place.factor
                    g2 = g2.exact_div(f ** 4)
                    g3 = g3.exact_div(f ** 6)
                    n -= f.degree
                changed = True
                break
    if n < 1:
        raise SurfaceError("minimal model would have n = 0 (isotrivial constant family)")
    return WeierstrassModel(g2, g3, n)


def total_disc_order(m: WeierstrassModel) -> int:
    """Sum of discriminant orders over all geometric places."""
    return sum(po.ord_disc * po.place.degree for po in places_and_orders(m))


def surface_type(m: WeierstrassModel) -> str:
    """``"rational"`` for n = 1, ``"K3"`` for n = 2, ``"other(n)"`` otherwise."""
    report = minimality_check(m)
    if not report.minimal:
        raise NonMinimalModelError(
            "model is not minimal at " + ", ".join(p.label() for p in report.offending)
        )
    total = total_disc_order(m)
    if total != 12 * m.n:
        raise SurfaceError(f"discriminant orders sum to {total}, expected 12n = {12 * m.n}")
    return {1: "rational", 2: "K3"}.get(m.n, f"other({m.n})")


def is_generic_nodal(m: WeierstrassModel) -> bool:
    """True when every singular fibre is of type ``I_1``."""
    fibers = kodaira_classify(m)
    return all(f.kodaira_type == "I_1" for f in fibers)

