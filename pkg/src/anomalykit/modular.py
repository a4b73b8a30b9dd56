"""Double-precision evaluation of the Dedekind eta function, the modular
discriminant, the normalised j-function, and the analytic torsion / Quillen
norm of a flat torus ``C / <1, tau>``.

Every q-product or q-series is truncated once the next term falls below
``TruncationPolicy.tail_bound``; exceeding ``max_terms`` is an error rather
than a silently inaccurate answer.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass


class ModularError(ValueError):
    pass


class TruncationError(ModularError):
    pass


@dataclass(frozen=True)
class TruncationPolicy:
    tail_bound: float = 1e-16
    max_terms: int = 10000

    def __post_init__(self):
        if not self.tail_bound > 0:
            raise ModularError("tail_bound must be positive")
        if self.max_terms < 1:
            raise ModularError("max_terms must be at least 1")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class ModuliPoint:
    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        if not tau.imag > 0:
            raise ModularError(f"tau must lie in the upper half plane, got Im(tau) = {tau.imag}")
        object.__setattr__(self, "tau", tau)

    @classmethod
    def parse(cls, text: str) -> "ModuliPoint":
        """Parse ``"a+bi"`` style input (``"i"``, ``"0.3+0.8i"``, ``"2i"``)."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ModularError("empty tau")
        s = re.sub(r"(^|[+-])i$", r"\g<1>1i", s)
        s = s.replace("i", "j")
        try:
            value = complex(s)
        except ValueError:
            raise ModularError(f"cannot parse tau from {text!r}") from None
        return cls(value)


def _point(tau) -> complex:
    return tau.tau if isinstance(tau, ModuliPoint) else ModuliPoint(tau).tau


def nome(tau) -> complex:
    """``q = exp(2 pi i tau)``."""
    return cmath.exp(2j * math.pi * _point(tau))


def _euler_product(q: complex, policy: TruncationPolicy) -> complex:
    """``prod_{r >= 1} (1 - q^r)``."""
    prod = 1.0 + 0j
    qr = q
    for _ in range(policy.max_terms):
        if abs(qr) < policy.tail_bound:
            return prod
        prod *= 1 - qr
        qr *= q
    raise TruncationError(
        f"product did not converge within {policy.max_terms} factors (|q| = {abs(q):.3g})"
    )


def eta(tau, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Dedekind ``eta(tau) = exp(pi i tau/12) prod (1 - q^r)``."""
    t = _point(tau)
    return cmath.exp(1j * math.pi * t / 12) * _euler_product(nome(t), policy)


def discriminant_tau(tau, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``Delta_tau = q prod (1 - q^r)^24``."""
    q = nome(tau)
    return q * _euler_product(q, policy) ** 24


def _lambert(q: complex, power: int, policy: TruncationPolicy) -> complex:
    """``sum_{n >= 1} n^power q^n / (1 - q^n) = sum sigma_power(n) q^n``."""
    total = 0j
    qn = q
    for n in range(1, policy.max_terms + 1):
        term = n ** power * qn / (1 - qn)
        if abs(term) < policy.tail_bound:
            return total
        total += term
        qn *= q
    raise TruncationError(
        f"Eisenstein series did not converge within {policy.max_terms} terms (|q| = {abs(q):.3g})"
    )


def eisenstein_e4(tau, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    return 1 + 240 * _lambert(nome(tau), 3, policy)


def eisenstein_e6(tau, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    return 1 - 504 * _lambert(nome(tau), 5, policy)


def j_paper(tau, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``E4^3 / (E4^3 - E6^2)``: the classical j divided by 1728, so that
    ``j(i) = 1`` and ``j(exp(2 pi i/3)) = 0``."""
    e4c = eisenstein_e4(tau, policy) ** 3
    den = e4c - eisenstein_e6(tau, policy) ** 2
    if den == 0:
        raise OverflowError("j diverges: E4^3 - E6^2 underflowed to zero near the cusp")
    value = e4c / den
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OverflowError("j overflowed near the cusp")
    return value


def laplace_spectrum(tau, n_max: int) -> dict[tuple[int, int], float]:
    """Eigenvalues ``(2 pi / Im tau)^2 |n1 tau - n2|^2`` for ``|n1|, |n2| <= n_max``."""
    if n_max < 0:
        raise ModularError("n_max must be nonnegative")
    t = _point(tau)
    scale = (2 * math.pi / t.imag) ** 2
    return {
        (n1, n2): scale * abs(n1 * t - n2) ** 2
        for n1 in range(-n_max, n_max + 1)
        for n2 in range(-n_max, n_max + 1)
    }


def laplace_eigenvalues(tau, n_max: int) -> list[float]:
    """The same eigenvalues as a sorted multiset."""
    return sorted(laplace_spectrum(tau, n_max).values())


def analytic_torsion(tau, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Regularised determinant ``(Im tau / 2 pi)^2 |Delta_tau|^(1/6)``."""
    t = _point(tau)
    return (t.imag / (2 * math.pi)) ** 2 * abs(discriminant_tau(t, policy)) ** (1 / 6)


def quillen_norm_sq(tau, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Quillen norm squared of the canonical section; its L2 norm is 1, so
    this is the analytic torsion itself."""
    l2_norm_sq = 1.0
    return l2_norm_sq * analytic_torsion(tau, policy)


def format_real(x: float) -> str:
    return format(x, ".12g")


def format_complex(z: complex) -> str:
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0) else "+"
    return f"{format(z.real, '.12g')}{sign}{format(abs(z.imag), '.12g')}i"
