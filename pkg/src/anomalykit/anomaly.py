"""Generalized first Chern class of the determinant line bundle of the
fibrewise Cauchy-Riemann operators on a Jacobian elliptic surface.

A ledger records delta-current coefficients at the singular places together
with the degree of the smooth part on the base ``CP^1``.  The untwisted class
is ``-1/12 * sum ord(disc) delta_p + c_1(O(n))``; twisting by a rank ``r``
bundle with ``c_1 = 0`` and fibre-integrated ``c_2`` of degree ``deg R``
scales the currents by ``r`` and shifts the smooth part to ``r*n - deg R``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .upoly import Poly, gcd, parse_coeffs
from .weierstrass import (
    NonMinimalModelError,
    Place,
    WeierstrassModel,
    discriminant,
    minimality_check,
    places_and_orders,
)


class AnomalyError(ValueError):
    pass


@dataclass(frozen=True)
class Current:
    """Delta-current ``coeff * delta_p`` at every geometric point of ``place``."""

    place: Place
    coeff: Fraction
    ord_disc: int


@dataclass(frozen=True)
class AnomalyLedger:
    currents: tuple[Current, ...]
    continuous_degree: int

    def __post_init__(self):
        object.__setattr__(
            self, "currents", tuple(sorted(self.currents, key=lambda c: c.place.sort_key()))
        )

    @property
    def current_total(self) -> Fraction:
        return sum((c.coeff * c.place.degree for c in self.currents), Fraction(0))

    @property
    def total_degree(self) -> Fraction:
        return self.current_total + self.continuous_degree

    def point_coefficients(self) -> list[Fraction]:
        """One coefficient per geometric point (a degree-``d`` place repeats ``d`` times)."""
        out = []
        for c in self.currents:
            out.extend([c.coeff] * c.place.degree)
        return out

    def coefficient_at(self, label: str) -> Fraction:
        for c in self.currents:
            if c.place.label() == label or c.place.key() == label:
                return c.coeff
        raise KeyError(label)

    @property
    def local_anomaly_canceled(self) -> bool:
        return self.continuous_degree == 0

    def to_json(self) -> dict:
        return {
            "currents": [
                {"place": c.place.key(), "coeff": str(c.coeff), "points": c.place.degree}
                for c in self.currents
            ],
            "continuous_degree": self.continuous_degree,
            "holonomy_order": holonomy_group(self),
        }


def parse_ledger_json(data: Mapping | str) -> dict:
    """Validate a serialized ledger and return it with coefficients as Fractions."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, Mapping) or not {"currents", "continuous_degree", "holonomy_order"} <= set(data):
        raise AnomalyError("ledger JSON needs currents, continuous_degree and holonomy_order")
    currents = []
    for entry in data["currents"]:
        if not isinstance(entry, Mapping) or not {"place", "coeff"} <= set(entry):
            raise AnomalyError("ledger current entries need 'place' and 'coeff'")
        currents.append(
            {"place": str(entry["place"]), "coeff": Fraction(entry["coeff"]), "points": int(entry.get("points", 1))}
        )
    for key in ("continuous_degree", "holonomy_order"):
        if not isinstance(data[key], int) or isinstance(data[key], bool):
            raise AnomalyError(f"ledger JSON: {key} must be an integer")
    return {
        "currents": currents,
        "continuous_degree": data["continuous_degree"],
        "holonomy_order": data["holonomy_order"],
    }


def _require_minimal(m: WeierstrassModel) -> None:
    report = minimality_check(m)
    if not report.minimal:
        raise NonMinimalModelError(
            "model is not minimal at " + ", ".join(p.label() for p in report.offending)
        )


def det_line_chern(m: WeierstrassModel) -> AnomalyLedger:
    """Untwisted ledger: ``-ord_p(disc)/12`` at each singular place, smooth degree ``n``."""
    _require_minimal(m)
    currents = [
        Current(po.place, Fraction(-po.ord_disc, 12), po.ord_disc)
        for po in places_and_orders(m)
        if po.ord_disc >= 1
    ]
    return AnomalyLedger(tuple(currents), m.n)


def holonomy_phases(ledger: AnomalyLedger) -> list[tuple[Place, Fraction, Fraction]]:
    """Monodromy of the canonical section around each place, as fractions of a
    full turn in ``[0, 1)``: (place, counterclockwise, clockwise)."""
    out = []
    for c in ledger.currents:
        ccw = (-c.coeff) % 1
        out.append((c.place, ccw, (-ccw) % 1))
    return out


def holonomy_group(ledger: AnomalyLedger) -> int:
    """Order of the cyclic subgroup of U(1) generated by the local monodromies."""
    order = 1
    for _, ccw, _ in holonomy_phases(ledger):
        order = math.lcm(order, ccw.denominator)
    return order


@dataclass(frozen=True)
class ConnectionData:
    """Residues of the flat meromorphic connection ``dbar - sum a_p dt/(t - t_p)``."""

    residues: tuple[tuple[Place, Fraction], ...]
    extended: bool = False  # some place has ord(disc) > 1

    @property
    def residue_sum(self) -> Fraction:
        return sum((r * p.degree for p, r in self.residues), Fraction(0))


def meromorphic_connection(m: WeierstrassModel) -> ConnectionData:
    """Residue ``-ord_p(disc)/12`` at each singular place.

    For nodal models every residue is ``-1/12``; higher orders are the
    natural per-place extension and set ``extended``.
    """
    ledger = det_line_chern(m)
    residues = tuple((c.place, c.coeff) for c in ledger.currents)
    extended = any(c.ord_disc > 1 for c in ledger.currents)
    return ConnectionData(residues, extended)


def twisted_det_chern(m: WeierstrassModel, rank: int, deg_r: int) -> AnomalyLedger:
    """Ledger after twisting by a rank ``rank`` bundle with ``c_1 = 0`` whose
    fibre-integrated ``c_2`` has degree ``deg_r`` on the base."""
    if rank < 1:
        raise AnomalyError("rank must be at least 1")
    if deg_r < 0:
        raise AnomalyError("deg R must be nonnegative")
    base = det_line_chern(m)
    currents = tuple(Current(c.place, rank * c.coeff, c.ord_disc) for c in base.currents)
    return AnomalyLedger(currents, rank * m.n - deg_r)


def cancellation_degree(rank: int, n: int) -> int:
    """The degree of ``R`` that kills the smooth part: ``rank * n``."""
    if rank < 1 or n < 1:
        raise AnomalyError("rank and n must be at least 1")
    return rank * n


# ---------------------------------------------------------------------------
# Spectral double covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralCoverData:
    """Sections ``a0`` of ``R`` and ``a2`` of ``R (x) L^-2`` defining ``w = a0 - a2 x``."""

    deg_r: int
    a0: Poly
    a2: Poly

    def validate(self, n: int) -> None:
        if self.a2.is_zero():
            raise AnomalyError("a2 must not vanish identically")
        if self.a0.degree > self.deg_r:
            raise AnomalyError(f"deg a0 = {self.a0.degree} exceeds deg R = {self.deg_r}")
        if self.a2.degree > self.deg_r - 2 * n:
            raise AnomalyError(
                f"deg a2 = {self.a2.degree} exceeds deg R - 2n = {self.deg_r - 2 * n}"
            )

    @classmethod
    def from_json(cls, data: Mapping | str) -> "SpectralCoverData":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, Mapping) or set(data) != {"degR", "a0", "a2"}:
            raise AnomalyError("cover JSON must be an object with exactly the keys degR, a0, a2")
        if not isinstance(data["degR"], int) or isinstance(data["degR"], bool):
            raise AnomalyError("cover JSON: degR must be an integer")
        try:
            return cls(data["degR"], parse_coeffs(data["a0"]), parse_coeffs(data["a2"]))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise AnomalyError(f"cover JSON: {exc}") from None

    def to_json(self) -> dict:
        return {"degR": self.deg_r, "a0": self.a0.to_json(), "a2": self.a2.to_json()}


@dataclass(frozen=True)
class SpectralCover:
    x_num: Poly
    x_den: Poly
    branch: Poly
    degree_bound: int

    @property
    def branch_degree(self) -> int:
        return self.branch.degree

    @property
    def generic(self) -> bool:
        return self.branch.degree == self.degree_bound

    def to_json(self) -> dict:
        return {
            "x_numerator": self.x_num.to_json(),
            "x_denominator": self.x_den.to_json(),
            "branch": self.branch.to_json(),
            "branch_degree": self.branch_degree,
            "degree_bound": self.degree_bound,
        }


def spectral_cover(m: WeierstrassModel, s: SpectralCoverData) -> SpectralCover:
    """Fibrewise ``x = a0/a2`` and the branch polynomial
    ``4 a0^3 - g2 a0 a2^2 - g3 a2^3`` (zero exactly where ``y = 0``)."""
    discriminant(m)
    s.validate(m.n)
    g = gcd(s.a0, s.a2) if not s.a0.is_zero() else s.a2.monic()
    num, den = s.a0.exact_div(g), s.a2.exact_div(g)
    scale = 1 / den.lead
    branch = 4 * s.a0 ** 3 - m.g2 * s.a0 * s.a2 ** 2 - m.g3 * s.a2 ** 3
    return SpectralCover(num * scale, den * scale, branch, 3 * s.deg_r)

