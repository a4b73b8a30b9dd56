"""Model constructors and grids shared by the property and acceptance suites."""
from __future__ import annotations

import math
import random
from fractions import Fraction

from anomalykit.upoly import Poly, is_squarefree
from anomalykit.weierstrass import DegenerateModelError, Place, WeierstrassModel, minimality_check, type_at

T = Poly.t()

# fundamental domain |Re tau| <= 1/2, |tau| >= 1; 5 real parts x 4 heights
GRID = [
    complex(x, y)
    for x in (-0.45, -0.2, 0.0, 0.2, 0.45)
    for y in (math.sqrt(1 - x * x) + 0.02, 1.25, 1.7, 2.3)
]


def nodal_model(n: int, roots: list[int], a_shift: int = 1) -> WeierstrassModel:
    """``g2 = 3A^2``, ``g3 = A^3 + B`` so that ``disc = -27 B (2A^3 + B)``.

    ``B`` has the given rational roots; with ``deg A = 2n`` and ``deg B = 6n``
    the discriminant has degree ``12n``.
    """
    a = T ** (2 * n) + a_shift
    b = Poly.from_roots(roots)
    return WeierstrassModel(3 * a ** 2, a ** 3 + b, n)


def NODAL12() -> WeierstrassModel:
    """Twelve simple rational roots of the discriminant, smooth at infinity.

    ``P = prod(t - a)`` and ``R = prod(t - b)`` over the ideal Prouhet-Tarry-Escott
    pair below differ by the constant ``K``.  With ``A = K`` and ``B = 2 K^2 R``
    one gets ``2A^3 + B = 2 K^2 P``, so both factors of the discriminant split.
    """
    p = Poly.from_roots(PTE_PAIR[0])
    r = Poly.from_roots(PTE_PAIR[1])
    k = (p - r)[0]
    a = Poly([k])
    return WeierstrassModel(3 * a ** 2, a ** 3 + 2 * k * k * r, 1)


PTE_PAIR = ([0, 5, 6, 16, 17, 22], [1, 2, 10, 12, 20, 21])


def NODAL12_SEXTIC() -> WeierstrassModel:
    """Twelve nodes, six rational and six conjugate over a degree-6 factor."""
    return nodal_model(1, [0, 1, -1, 2, -2, 3])


def NODAL24() -> WeierstrassModel:
    return nodal_model(2, [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6])


def IRREDUCIBLE12() -> WeierstrassModel:
    """``g2 = t^4``, ``g3 = 1 + t^6``: the discriminant is irreducible of degree 12."""
    return WeierstrassModel(T ** 4, 1 + T ** 6, 1)


def random_unit(rng: random.Random, degree: int) -> Poly:
    """Random polynomial of the given degree with nonzero constant term."""
    coeffs = [rng.choice([c for c in range(-5, 6) if c])]
    coeffs += [rng.randint(-5, 5) for _ in range(degree)]
    if degree:
        coeffs[-1] = coeffs[-1] or 1
    return Poly(coeffs)


# (ord g2, ord g3) at t = 0 for the additive types; I_n and I_n* are built separately
ADDITIVE_ORDERS = {
    "II": (1, 1),
    "III": (1, 2),
    "IV": (2, 2),
    "I_0*": (2, 3),
    "IV*": (3, 4),
    "III*": (3, 5),
    "II*": (4, 5),
}


def model_with_type_at_zero(symbol: str, rng: random.Random, n: int = 2) -> WeierstrassModel:
    """A minimal model whose fibre over ``t = 0`` has Kodaira type ``symbol``.

    Supported: the additive types above, ``I_m`` and ``I_m*`` for ``m`` in 1..4.
    """
    for _ in range(200):
        if symbol in ADDITIVE_ORDERS:
            a, b = ADDITIVE_ORDERS[symbol]
            g2 = T ** a * random_unit(rng, rng.randint(0, 4 * n - a))
            g3 = T ** b * random_unit(rng, rng.randint(0, 6 * n - b))
        elif symbol.startswith("I_") and symbol.endswith("*"):
            base = model_with_type_at_zero(symbol[:-1], rng, n=n - 1)
            g2, g3 = base.g2 * T ** 2, base.g3 * T ** 3
        elif symbol.startswith("I_"):
            k = int(symbol[2:])
            unit_a = random_unit(rng, rng.randint(0, 2 * n))
            unit_b = random_unit(rng, rng.randint(0, max(6 * n - k, 0)))
            g2, g3 = 3 * unit_a ** 2, unit_a ** 3 + T ** k * unit_b
        else:
            raise ValueError(symbol)
        try:
            m = WeierstrassModel(g2, g3, n)
        except DegenerateModelError:
            continue
        if not minimality_check(m).minimal:
            continue
        if type_at(m, Place(T)) == symbol:
            return m
    raise RuntimeError(f"could not build a model of type {symbol}")


def random_model(rng: random.Random) -> WeierstrassModel:
    """Random model from prescribed rational roots and multiplicities.

    Not necessarily minimal.
    """
    while True:
        try:
            return _random_model(rng)
        except DegenerateModelError:
            pass


def _random_model(rng: random.Random) -> WeierstrassModel:
    roots = rng.sample(range(-4, 5), rng.randint(1, 3))
    g2 = Poly([rng.choice([-3, -1, 1, 2, 3])])
    g3 = Poly([rng.choice([-2, -1, 1, 3])])
    for r in roots:
        g2 = g2 * (T - r) ** rng.randint(0, 5)
        g3 = g3 * (T - r) ** rng.randint(0, 7)
    g2 = g2 * random_unit(rng, rng.randint(0, 2))
    g3 = g3 * random_unit(rng, rng.randint(0, 2))
    n = max(1, -(-g2.degree // 4), -(-g3.degree // 6)) + rng.randint(0, 1)
    return WeierstrassModel(g2, g3, n)


def random_twist_poly(rng: random.Random) -> Poly:
    while True:
        if rng.random() < 0.4:
            q = Poly([Fraction(rng.randint(-4, 4)), 1])
        else:
            q = Poly([rng.randint(-4, 4), rng.randint(-3, 3), rng.choice([-2, -1, 1, 2])])
        if is_squarefree(q):
            return q
