"""Dense univariate polynomials in ``t`` with Fraction coefficients."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import as_rational


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``t**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Poly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other) -> "Poly":
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        # multiply over the integers after clearing denominators
        da, ia = _integral(self.coeffs)
        db, ib = _integral(other.coeffs)
        out = [0] * (len(ia) + len(ib) - 1)
        for i, a in enumerate(ia):
            if a:
                for j, b in enumerate(ib):
                    out[i + j] += a * b
        den = da * db
        return Poly(Fraction(c, den) for c in out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def valuation(self, factor: "Poly") -> float | int:
        """Multiplicity of ``factor`` in ``self``; ``inf`` for the zero polynomial."""
        if factor.degree < 1:
            raise ValueError("valuation needs a nonconstant factor")
        if self.is_zero():
            return float("inf")
        n, cur = 0, self
        while True:
            q, r = divmod(cur, factor)
            if not r.is_zero():
                return n
            n, cur = n + 1, q

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def _integral(coeffs: tuple[Fraction, ...]) -> tuple[int, list[int]]:
    den = math.lcm(*(c.denominator for c in coeffs))
    return den, [c.numerator * (den // c.denominator) for c in coeffs]


def _lift(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def format_poly(p: Poly, var: str = "t") -> str:
    """Ascending-degree rendering with explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(p: Poly) -> bool:
    if p.is_zero():
        return False
    return gcd(p, p.derivative()).degree == 0


def squarefree_part(p: Poly) -> Poly:
    if p.degree < 1:
        return Poly([1])
    return p.exact_div(gcd(p, p.derivative())).monic()


def factor_irreducible(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over the rationals with multiplicities.

    The list is sorted by the factors' string form.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree < 1:
        return []
    return list(_factor_monic(p.monic()))


@lru_cache(maxsize=4096)
def _factor_monic(p: Poly) -> tuple[tuple[Poly, int], ...]:
    import sympy

    t = sympy.Symbol("t")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], t, domain="QQ")
    _, factors = sp.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [as_rational(c) for c in reversed(f.all_coeffs())]
        out.append((Poly(coeffs).monic(), int(mult)))
    out.sort(key=lambda fm: str(fm[0]))
    return tuple(out)


def parse_coeffs(values: Sequence) -> Poly:
    """Build a polynomial from an ascending list of rationals (ints or strings)."""
    if not isinstance(values, (list, tuple)):
        raise ValueError("polynomial must be given as an ascending coefficient list")
    return Poly(as_rational(v) for v in values)


def format_factored(p: Poly, var: str = "t") -> str:
    """Leading coefficient times monic irreducible factors, e.g. ``19683*t^2*(-1 + t)^9``."""
    if p.is_zero():
        return "0"
    chunks = []
    for f, mult in factor_irreducible(p):
        body = format_poly(f, var)
        if len(f.coeffs) - sum(1 for c in f.coeffs if c == 0) > 1:
            body = f"({body})"
        chunks.append(body if mult == 1 else f"{body}^{mult}")
    lead = p.lead
    if not chunks:
        return str(lead)
    if lead == 1:
        return "*".join(chunks)
    if lead == -1:
        return "-" + "*".join(chunks)
    return f"{lead}*" + "*".join(chunks)
