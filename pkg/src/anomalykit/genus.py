"""Hirzebruch L-polynomials, Pontrjagin numbers of products of even complex
projective spaces, and signature evaluation.

Two independent routes produce ``L_k``:

* :func:`l_polynomial` builds the multiplicative sequence of the series
  ``sqrt(z)/tanh(sqrt(z))`` through ``exp(sum_n c_n P_n)`` where
  ``log Q(z) = sum c_n z^n`` and ``P_n`` are power sums of the Pontrjagin roots;
* :func:`solve_l_via_generators` imposes ``sign = 1`` on every product
  ``CP^{2i_1} x ... x CP^{2i_m}`` and solves the resulting linear system.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .algebra import (
    GradedPolynomial,
    Partition,
    PowerSeries,
    as_rational,
    exps_to_partition,
    graded_exp,
    partitions,
    power_sums_in_elementary,
)


class GenusError(ValueError):
    pass


@dataclass(frozen=True)
class ManifoldDescriptor:
    """A rational cobordism class in dimension ``4k`` given by its
    Pontrjagin numbers.  Partitions missing from the map read as zero."""

    k: int
    pontrjagin_numbers: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1:
            raise GenusError("dimension parameter k must be at least 1")
        clean = {}
        for part, value in self.pontrjagin_numbers.items():
            part = part if isinstance(part, Partition) else Partition(part)
            if part.weight != self.k:
                raise GenusError(
                    f"Pontrjagin number p_{part.key()} has weight {part.weight}, expected {self.k}"
                )
            clean[part] = as_rational(value)
        object.__setattr__(self, "pontrjagin_numbers", clean)

    @property
    def dimension(self) -> int:
        return 4 * self.k

    def number(self, part: Sequence[int]) -> Fraction:
        return self.pontrjagin_numbers.get(Partition(part), Fraction(0))

    def to_json(self) -> dict:
        ordered = [p for p in partitions(self.k) if p in self.pontrjagin_numbers]
        return {
            "k": self.k,
            "pontrjagin": {p.key(): str(self.pontrjagin_numbers[p]) for p in ordered},
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "ManifoldDescriptor":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, Mapping) or set(data) - {"k", "pontrjagin"}:
            raise GenusError("manifold JSON must be an object with keys 'k' and 'pontrjagin'")
        k = data.get("k")
        if not isinstance(k, int) or isinstance(k, bool):
            raise GenusError("manifold JSON: 'k' must be an integer")
        raw = data.get("pontrjagin", {})
        if not isinstance(raw, Mapping):
            raise GenusError("manifold JSON: 'pontrjagin' must be an object")
        try:
            numbers = {Partition.parse(key): as_rational(val) for key, val in raw.items()}
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise GenusError(f"manifold JSON: {exc}") from None
        return cls(k, numbers)


@dataclass(frozen=True)
class GenusSeries:
    """Coefficients ``b_0..b_k`` of the characteristic power series."""

    q_coefficients: PowerSeries

    def __post_init__(self):
        if self.q_coefficients[0] != 1:
            raise GenusError("characteristic series must start with 1")

    def b(self, i: int) -> Fraction:
        return self.q_coefficients[i]


def l_series(k: int) -> GenusSeries:
    """``sqrt(z)/tanh(sqrt(z))`` to order ``k`` by exact series division.

    Numerator ``cosh(sqrt z) = sum z^n/(2n)!`` and denominator
    ``sinh(sqrt z)/sqrt z = sum z^n/(2n+1)!``.
    """
    if k < 0:
        raise GenusError("k must be nonnegative")
    cosh = PowerSeries.from_function(lambda n: Fraction(1, math.factorial(2 * n)), k)
    sinhc = PowerSeries.from_function(lambda n: Fraction(1, math.factorial(2 * n + 1)), k)
    return GenusSeries(cosh / sinhc)


def multiplicative_sequence(series: PowerSeries, k: int) -> GradedPolynomial:
    """Weight-``k`` member of the multiplicative sequence of ``series``.

    ``prod_i Q(t_i z) = exp(sum_n c_n P_n(t) z^n)`` with ``log Q = sum c_n z^n``;
    the power sums are rewritten in ``p_i = e_i(t)`` by Newton's identities.
    """
    if series.order < k:
        raise GenusError("series is not known to the required order")
    if series[0] != 1:
        raise GenusError("characteristic series must start with 1")
    log_q = PowerSeries(series.coeffs[: k + 1], k).log()
    sums = power_sums_in_elementary(k)
    exponent = GradedPolynomial()
    for n in range(1, k + 1):
        exponent = exponent + sums[n] * log_q[n]
    return graded_exp(exponent, k).homogeneous_part(k)


@lru_cache(maxsize=None)
def l_polynomial(k: int) -> GradedPolynomial:
    """Hirzebruch ``L_k`` as a homogeneous weight-``k`` polynomial."""
    if k < 1:
        raise GenusError("k must be at least 1")
    return multiplicative_sequence(l_series(k).q_coefficients, k)


def cp_pontrjagin(k: int) -> PowerSeries:
    """Total Pontrjagin class ``(1 + u)^(2k+1)`` of ``CP^{2k}`` in ``u = H^2``.

    The result is a series of order ``k``: ``u^(k+1) = H^(2k+2)`` vanishes on
    a space of real dimension ``4k``.
    """
    if k < 1:
        raise GenusError("k must be at least 1")
    return PowerSeries((math.comb(2 * k + 1, i) for i in range(k + 1)), k)


def _mul_truncated(a: dict, b: dict, caps: tuple[int, ...]) -> dict:
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if any(x > c for x, c in zip(e, caps)):
                continue
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def product_manifold(factors: Sequence[int]) -> ManifoldDescriptor:
    """Pontrjagin numbers of ``CP^{d_1} x ... x CP^{d_m}`` for even ``d_j``.

    Each factor contributes ``(1 + u_j)^(d_j + 1)`` with ``u_j^(d_j/2 + 1) = 0``;
    a number ``p_(i)`` is the coefficient of ``prod u_j^(d_j/2)`` in the
    corresponding product of classes.
    """
    if not factors:
        raise GenusError("need at least one factor")
    halves = []
    for d in factors:
        if d < 2 or d % 2:
            raise GenusError(f"factor CP^{d} is not an even-dimensional projective space")
        halves.append(d // 2)
    caps = tuple(halves)
    m = len(caps)
    k = sum(caps)

    # graded pieces p_1..p_k of the total class, as polynomials in u_1..u_m
    total: dict[tuple[int, ...], int] = {(0,) * m: 1}
    for j, i in enumerate(caps):
        factor = {}
        for a in range(i + 1):
            e = [0] * m
            e[j] = a
            factor[tuple(e)] = math.comb(2 * i + 1, a)
        total = _mul_truncated(total, factor, caps)
    classes: list[dict] = [dict() for _ in range(k + 1)]
    for e, c in total.items():
        classes[sum(e)][e] = c

    top = caps
    numbers = {}
    for part in partitions(k):
        prod: dict[tuple[int, ...], int] = {(0,) * m: 1}
        for p in part:
            prod = _mul_truncated(prod, classes[p], caps)
        value = prod.get(top, 0)
        if value:
            numbers[part] = Fraction(value)
    return ManifoldDescriptor(k, numbers)


def evaluate_genus(manifold: ManifoldDescriptor, poly: GradedPolynomial) -> Fraction:
    """Pair a weight-``k`` polynomial with the manifold's Pontrjagin numbers."""
    if not poly.is_homogeneous(manifold.k):
        raise GenusError(
            f"polynomial weights {sorted(poly.weights())} do not match dimension 4*{manifold.k}"
        )
    total = Fraction(0)
    for exps, c in poly.terms.items():
        total += c * manifold.number(exps_to_partition(exps))
    return total


def signature(manifold: ManifoldDescriptor) -> Fraction:
    return evaluate_genus(manifold, l_polynomial(manifold.k))


def solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals."""
    n = len(matrix)
    aug = [[as_rational(x) for x in row] + [as_rational(r)] for row, r in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise GenusError("singular linear system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def solve_l_via_generators(k: int) -> GradedPolynomial:
    """``L_k`` from the normalisation ``sign(CP^{2i_1} x ... x CP^{2i_m}) = 1``."""
    if k < 1:
        raise GenusError("k must be at least 1")
    parts = partitions(k)
    rows = []
    for gen in parts:
        manifold = product_manifold([2 * i for i in gen])
        rows.append([manifold.number(mono) for mono in parts])
    coeffs = solve_exact(rows, [Fraction(1)] * len(parts))
    poly = GradedPolynomial()
    for mono, c in zip(parts, coeffs):
        poly = poly + GradedPolynomial.monomial(mono, c)
    return poly


def twisted_index(rank: int, index: int, c2_integral: int) -> int:
    """Index of a signature operator twisted by a rank-``rank`` bundle with
    vanishing ``c_1`` on a 4-manifold."""
    if rank < 1:
        raise GenusError("rank must be at least 1")
    return rank * index - c2_integral
