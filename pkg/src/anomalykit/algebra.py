"""Exact algebra over the rationals: partitions, weighted polynomials in the
Pontrjagin symbols p1, p2, ..., truncated power series, and the conversion of
monomial symmetric functions into elementary symmetric ones.

All scalars are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected; every quantity here is meant to be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "p") and hasattr(value, "q"):  # sympy Rational
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, key: str) -> "Partition":
        """Parse the comma-joined form used in JSON keys, e.g. ``"2,1"``."""
        key = key.strip()
        if not key:
            return cls(())
        return cls(sorted((int(x) for x in key.split(",")), reverse=True))

    @property
    def weight(self) -> int:
        return sum(self)

    def multiplicities(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for p in self:
            counts[p] = counts.get(p, 0) + 1
        return counts

    def key(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


def _partitions_bounded(k: int, largest: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions_bounded(k - first, first):
            yield (first,) + rest


def partitions(k: int) -> list[Partition]:
    """All partitions of ``k`` in reverse-lexicographic order.

    >>> partitions(3)
    [Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))]
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    return [Partition(p) for p in _partitions_bounded(k, k)]


def reverse_lex_key(part: Sequence[int]) -> tuple[int, ...]:
    """Sort key placing partitions in reverse-lexicographic order."""
    return tuple(-p for p in part)


# ---------------------------------------------------------------------------
# Graded polynomials in p1, p2, ...
# ---------------------------------------------------------------------------


def _trim(exps: Sequence[int]) -> tuple[int, ...]:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _add_exps(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return _trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def exps_weight(exps: Sequence[int]) -> int:
    return sum((i + 1) * e for i, e in enumerate(exps))


def exps_to_partition(exps: Sequence[int]) -> Partition:
    parts: list[int] = []
    for i in range(len(exps), 0, -1):
        parts.extend([i] * exps[i - 1])
    return Partition(parts)


def partition_to_exps(part: Sequence[int]) -> tuple[int, ...]:
    if not part:
        return ()
    exps = [0] * max(part)
    for p in part:
        exps[p - 1] += 1
    return _trim(exps)


class GradedPolynomial:
    """Polynomial in p1, p2, ... with rational coefficients; ``wt(p_i) = i``.

    Terms are stored as ``{exponent tuple: Fraction}`` with trailing zero
    exponents stripped and zero coefficients dropped.  Instances are
    immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            key = _trim(exps)
            clean[key] = clean.get(key, Fraction(0)) + as_rational(c)
        self._terms = {k: v for k, v in clean.items() if v != 0}

    # constructors
    @classmethod
    def constant(cls, c) -> "GradedPolynomial":
        return cls({(): c})

    @classmethod
    def symbol(cls, i: int) -> "GradedPolynomial":
        """The symbol ``p_i`` (1-based)."""
        if i < 1:
            raise ValueError("symbols are p1, p2, ...")
        return cls({(0,) * (i - 1) + (1,): 1})

    @classmethod
    def monomial(cls, part: Sequence[int], coeff=1) -> "GradedPolynomial":
        """``coeff * p_{i1} * ... * p_{im}`` for the partition ``(i1, ..., im)``."""
        return cls({partition_to_exps(part): coeff})

    # inspection
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def weights(self) -> set[int]:
        return {exps_weight(e) for e in self._terms}

    def is_homogeneous(self, k: int | None = None) -> bool:
        w = self.weights()
        if not w:
            return True
        return len(w) == 1 and (k is None or w == {k})

    def coefficient(self, part: Sequence[int]) -> Fraction:
        return self._terms.get(partition_to_exps(part), Fraction(0))

    def by_partition(self) -> dict[Partition, Fraction]:
        """Coefficients keyed by partition, in reverse-lexicographic order."""
        items = [(exps_to_partition(e), c) for e, c in self._terms.items()]
        items.sort(key=lambda pc: (-pc[0].weight, reverse_lex_key(pc[0])))
        return dict(items)

    def homogeneous_part(self, k: int) -> "GradedPolynomial":
        return GradedPolynomial(
            {e: c for e, c in self._terms.items() if exps_weight(e) == k}
        )

    def truncate(self, max_weight: int) -> "GradedPolynomial":
        return GradedPolynomial(
            {e: c for e, c in self._terms.items() if exps_weight(e) <= max_weight}
        )

    # arithmetic
    def __add__(self, other) -> "GradedPolynomial":
        other = _lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return GradedPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "GradedPolynomial":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "GradedPolynomial":
        return _lift(other) - self

    def __mul__(self, other) -> "GradedPolynomial":
        other = _lift(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exps(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return GradedPolynomial(out)

    __rmul__ = __mul__

    def mul_truncated(self, other: "GradedPolynomial", max_weight: int) -> "GradedPolynomial":
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            w1 = exps_weight(e1)
            for e2, c2 in other._terms.items():
                if w1 + exps_weight(e2) > max_weight:
                    continue
                e = _add_exps(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return GradedPolynomial(out)

    def __pow__(self, n: int) -> "GradedPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = GradedPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            other = _lift(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def evaluate(self, values: Sequence) -> Fraction:
        """Substitute ``values[i-1]`` for ``p_i``."""
        total = Fraction(0)
        for exps, c in self._terms.items():
            if len(exps) > len(values):
                raise ValueError("not enough values for the symbols in use")
            term = c
            for v, e in zip(values, exps):
                if e:
                    term *= as_rational(v) ** e
            total += term
        return total

    def __str__(self) -> str:
        return format_graded(self)

    def __repr__(self) -> str:
        return f"GradedPolynomial({format_graded(self)!r})"


def _lift(x) -> GradedPolynomial:
    if isinstance(x, GradedPolynomial):
        return x
    return GradedPolynomial.constant(as_rational(x))


def _monomial_str(part: Partition) -> str:
    chunks = []
    for p, m in sorted(part.multiplicities().items(), reverse=True):
        chunks.append(f"p{p}" if m == 1 else f"p{p}^{m}")
    return "*".join(chunks)


def format_graded(poly: GradedPolynomial) -> str:
    """Render with a common denominator pulled out, e.g. ``(7*p2 - p1^2)/45``.

    Terms follow reverse-lexicographic partition order.
    """
    coeffs = poly.by_partition()
    if not coeffs:
        return "0"
    den = 1
    for c in coeffs.values():
        den = math.lcm(den, c.denominator)
    pieces = []
    for part, c in coeffs.items():
        num = c * den
        assert num.denominator == 1
        n = num.numerator
        mono = _monomial_str(part)
        mag = abs(n)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(("-" if n < 0 else "") + body)
        else:
            pieces.append((" - " if n < 0 else " + ") + body)
    expr = "".join(pieces)
    if den == 1:
        return expr
    if len(coeffs) == 1 and not expr.startswith("-"):
        return f"{expr}/{den}"
    return f"({expr})/{den}"


def graded_exp(x: GradedPolynomial, max_weight: int) -> GradedPolynomial:
    """``exp(x)`` truncated above ``max_weight``; ``x`` needs no constant term."""
    if x.coefficient(()) != 0:
        raise ValueError("exp needs a series without constant term")
    result = GradedPolynomial.constant(1)
    power = GradedPolynomial.constant(1)
    for m in range(1, max_weight + 1):
        power = power.mul_truncated(x, max_weight) * Fraction(1, m)
        if power.is_zero():
            break
        result = result + power
    return result


# ---------------------------------------------------------------------------
# Symmetric functions
# ---------------------------------------------------------------------------


def power_sums_in_elementary(k: int) -> list[GradedPolynomial]:
    """Power sums ``P_1..P_k`` of the roots, written in the elementary
    symmetric functions ``p_i = e_i`` by Newton's identities.

    ``sums[n]`` is ``P_n``; index 0 holds the zero polynomial.
    """
    sums = [GradedPolynomial()]
    for n in range(1, k + 1):
        acc = GradedPolynomial.symbol(n) * ((-1) ** (n - 1) * n)
        for i in range(1, n):
            acc = acc + GradedPolynomial.symbol(i) * sums[n - i] * ((-1) ** (i - 1))
        sums.append(acc)
    return sums


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions of ``items`` (as lists of blocks)."""
    if not items:
        yield []
        return
    first, rest = items[0], list(items[1:])
    for size in range(len(rest) + 1):
        for others in combinations(range(len(rest)), size):
            block = [first] + [rest[i] for i in others]
            remaining = [rest[i] for i in range(len(rest)) if i not in others]
            for tail in set_partitions(remaining):
                yield [block] + tail


def monomial_symmetric_in_elementary(part: Sequence[int], k: int) -> GradedPolynomial:
    """Express the monomial symmetric function ``m_part`` in ``p_1..p_k``.

    The augmented monomial sum (distinct indices, ordered) is expanded over
    set partitions of the parts with Moebius weights
    ``prod (-1)^(|B|-1) (|B|-1)!`` and power sums ``P_{sum B}``; dividing by
    the product of part multiplicities' factorials yields ``m_part``.
    """
    part = Partition(sorted(part, reverse=True))
    if part.weight > k:
        raise ValueError("partition weight exceeds the number of symbols")
    if not part:
        return GradedPolynomial.constant(1)
    sums = power_sums_in_elementary(part.weight)
    total = GradedPolynomial()
    for blocks in set_partitions(list(range(len(part)))):
        coeff = 1
        term = GradedPolynomial.constant(1)
        for block in blocks:
            size = len(block)
            coeff *= (-1) ** (size - 1) * math.factorial(size - 1)
            term = term * sums[sum(part[i] for i in block)]
        total = total + term * coeff
    norm = math.prod(math.factorial(m) for m in part.multiplicities().values())
    return total * Fraction(1, norm)


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


class SeriesError(ValueError):
    pass


class PowerSeries:
    """Power series in ``z`` known exactly up to and including ``z**order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise SeriesError("truncation order must be nonnegative")
        cs = [as_rational(c) for c in coeffs]
        cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.order = order

    @classmethod
    def from_function(cls, fn: Callable[[int], object], order: int) -> "PowerSeries":
        return cls((fn(i) for i in range(order + 1)), order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @classmethod
    def z(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "PowerSeries") -> None:
        if not isinstance(other, PowerSeries):
            raise TypeError("expected a PowerSeries")
        if other.order != self.order:
            raise SeriesError(
                f"truncation orders differ ({self.order} vs {other.order})"
            )

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries((a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries((-a for a in self.coeffs), self.order)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def scale(self, c) -> "PowerSeries":
        c = as_rational(c)
        return PowerSeries((c * a for a in self.coeffs), self.order)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        a, b, n = self.coeffs, other.coeffs, self.order
        return PowerSeries(
            (sum(a[i] * b[m - i] for i in range(m + 1)) for m in range(n + 1)), n
        )

    def __truediv__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        b = other.coeffs
        if b[0] == 0:
            raise SeriesError("division by a series with zero constant term")
        out: list[Fraction] = []
        for m in range(self.order + 1):
            acc = self.coeffs[m] - sum(out[i] * b[m - i] for i in range(m))
            out.append(acc / b[0])
        return PowerSeries(out, self.order)

    def derivative(self) -> "PowerSeries":
        """Formal derivative; the top coefficient is unknown and set to zero."""
        return PowerSeries(
            (i * self.coeffs[i] for i in range(1, self.order + 1)), self.order
        )

    def integral(self) -> "PowerSeries":
        """Antiderivative with zero constant term (drops the top input term)."""
        return PowerSeries(
            [0] + [self.coeffs[i] / (i + 1) for i in range(self.order)], self.order
        )

    def exp(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] != 0:
            raise SeriesError("exp needs zero constant term")
        e = [Fraction(1)]
        for n in range(1, self.order + 1):
            e.append(sum(k * a[k] * e[n - k] for k in range(1, n + 1)) / n)
        return PowerSeries(e, self.order)

    def log(self) -> "PowerSeries":
        if self.coeffs[0] != 1:
            raise SeriesError("log needs constant term 1")
        return (self.derivative() / self).integral()

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(z))``; ``inner`` must have zero constant term."""
        self._check(inner)
        if inner.coeffs[0] != 0:
            raise SeriesError("composition needs an inner series without constant term")
        result = PowerSeries([self.coeffs[-1]], self.order)
        for c in reversed(self.coeffs[:-1]):
            result = result * inner + PowerSeries([c], self.order)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"PowerSeries([{body}], order={self.order})"


_SERIES_OPS = {
    "add": lambda a, b: a + b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "exp": lambda a, b: a.exp(),
    "log": lambda a, b: a.log(),
    "compose": lambda a, b: a.compose(b),
}


def series_arith(a: PowerSeries, b: PowerSeries | None, op: str) -> PowerSeries:
    """Dispatch a named series operation; ``b`` is ignored by exp and log."""
    try:
        fn = _SERIES_OPS[op]
    except KeyError:
        raise SeriesError(f"unknown series operation {op!r}") from None
    if b is not None:
        a._check(b)
    return fn(a, b)
