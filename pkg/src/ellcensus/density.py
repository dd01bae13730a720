"""Euler-product density constants and the elliptic divisor ``d_E``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .curve import CurveQ, reduce
from .errors import DomainError, InsufficientDataError, InvalidDiscriminantError
from .numtheory import factorize, iter_primes, legendre, primes_in_range
from .order import group_order

# Rosser-Schoenfeld: pi(x) < 1.25506 x / log x for x > 1
_ROSSER_SCHOENFELD = 1.25506
_ROUNDING = 1e-12

P0_REFERENCE = 0.505166168239435774
QUARTIC_TWIST_REFERENCE = 0.5336675447


@dataclass(frozen=True)
class BracketedConstant:
    """A constant known to lie in ``[lower, upper]``, with a point estimate."""

    lower: float
    upper: float
    prime_limit: int
    value: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __contains__(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    def scaled(self, factor: Fraction | float) -> "BracketedConstant":
        f = float(factor)
        return BracketedConstant(
            math.nextafter(self.lower * f, -math.inf),
            math.nextafter(self.upper * f, math.inf),
            self.prime_limit,
            self.value * f,
        )


def koblitz_factor(p):
    """``1 - (p^2 - p - 1) / ((p - 1)^3 (p + 1))``; accepts scalars or arrays."""
    return 1 - (p * p - p - 1) / ((p - 1) ** 3 * (p + 1))


def koblitz_tail_bound(limit: int) -> float:
    """Upper bound for ``-sum_{p > limit} log koblitz_factor(p)``.

    Each term is below ``2/p^2`` for ``p >= 5``, and partial summation with the
    Rosser-Schoenfeld bound gives ``sum_{p > L} p^-2 < 2.51012 / (L log L)``.
    """
    return 2 * 2 * _ROSSER_SCHOENFELD / (limit * math.log(limit))


@lru_cache(maxsize=8)
def koblitz_constant(prime_limit: int = 10**6) -> BracketedConstant:
    """Bracket for the Koblitz constant ``P0`` from the product over ``p <= prime_limit``.

    The partial product is an upper bound because every factor is below 1.
    """
    if prime_limit < 100:
        raise DomainError("koblitz_constant needs prime_limit >= 100")
    p = primes_in_range(2, prime_limit).astype(np.float64)
    log_partial = math.fsum(np.log1p(-(p * p - p - 1) / ((p - 1) ** 3 * (p + 1))).tolist())
    partial = math.exp(log_partial)
    upper = partial * (1 + _ROUNDING)
    lower = partial * math.exp(-koblitz_tail_bound(prime_limit)) * (1 - _ROUNDING)
    return BracketedConstant(lower, upper, prime_limit, (lower + upper) / 2)


def serre_correction(D: int) -> Fraction:
    """``1 + prod_{q | D} 1/(q^3 - 2q^2 - q + 3)`` for ``D = 1 mod 4``, else 1."""
    if D % 4 not in (0, 1):
        raise InvalidDiscriminantError(f"{D} is not 0 or 1 mod 4")
    if D % 4 == 0:
        return Fraction(1)
    prod = Fraction(1)
    for q in factorize(abs(D)).primes:
        prod /= q**3 - 2 * q**2 - q + 3
    return 1 + prod


def delta_serre(D: int, prime_limit: int = 10**6) -> BracketedConstant:
    """Prime-order density of a Serre curve whose ``Q(sqrt(Delta))`` has discriminant ``D``."""
    if D == 0:
        raise InvalidDiscriminantError("discriminant must be nonzero")
    return koblitz_constant(prime_limit).scaled(serre_correction(D))


def quartic_factor(p):
    """``1 - chi(p) (p^2 - p - 1) / ((p - chi(p)) (p - 1)^2)``, ``chi(p) = (-1)^((p-1)/2)``."""
    chi = np.where(np.asarray(p) % 4 == 1, 1.0, -1.0)
    return 1 - chi * (p * p - p - 1) / ((p - chi) * (p - 1) ** 2)


def delta_quartic_twist(prime_limit: int = 10**7) -> BracketedConstant:
    """Half the product of :func:`quartic_factor` over odd primes, in prime order.

    The product converges only conditionally, so the bracket is a heuristic:
    the point value is the partial product at ``prime_limit`` and the
    half-width is half the gap between the mean partial products over the
    dyadic blocks ``(L/4, L/2]`` and ``(L/2, L]``.
    """
    if prime_limit < 10**4:
        raise DomainError("delta_quartic_twist needs prime_limit >= 10^4")
    p = primes_in_range(3, prime_limit).astype(np.float64)
    partials = 0.5 * np.exp(np.cumsum(np.log(quartic_factor(p))))
    value = float(partials[-1])
    last = partials[p > prime_limit / 2].mean()
    prev = partials[(p > prime_limit / 4) & (p <= prime_limit / 2)].mean()
    half = abs(float(last - prev)) / 2
    return BracketedConstant(value - half, value + half, prime_limit, value)


@dataclass(frozen=True)
class DivisorEstimate:
    d_E: int
    stabilized_at: int
    primes_used: int


def _is_split(D: int | None, p: int) -> bool:
    if D is None:
        return True
    return D % p != 0 and legendre(D, p) == 1


def elliptic_divisor_empirical(curve: CurveQ, prime_bound: int) -> DivisorEstimate:
    """gcd of ``#E(F_p)`` over good primes split in the CM field (all good primes
    when the curve has no CM), scanning up to ``prime_bound``."""
    D = curve.cm_discriminant
    g, last, used = 0, 0, 0
    for p in iter_primes(5, prime_bound):
        if not curve.is_good_prime(p) or not _is_split(D, p):
            continue
        used += 1
        n = group_order(reduce(curve, p))
        if math.gcd(g, n) != g:
            g, last = math.gcd(g, n), p
        if g == 1:
            break
    if used == 0:
        raise InsufficientDataError(f"no split good primes up to {prime_bound}")
    return DivisorEstimate(g, last, used)


def _root(n: int, k: int) -> int | None:
    """Exact integer ``k``-th root (sign-preserving for odd ``k``), else None."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = _root(-n, k)
        return None if r is None else -r
    r = round(n ** (1.0 / k)) if n else 0
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None


# D -> (A, B, d_E) for the rows (A c^2, B c^3)
_SCALED_ROWS = {
    -7: (-140, -784, 4),
    -8: (-30, -56, 2),
    -11: (-1056, -13552, 1),
    -19: (-608, -5776, 1),
    -43: (-13760, -621264, 1),
    -67: (-117920, -15585808, 1),
    -163: (-34790720, -78984748304, 1),
}


def elliptic_divisor_cm_table(D: int, a: int, b: int) -> int | None:
    """``d_E`` from the classification of CM curves ``y^2 = x^3 + a x + b``.

    Overlapping rows are resolved toward the most specific one (a sixth
    power is also a square and a cube).
    """
    if D == -3:
        if a != 0 or b == 0:
            return None
        if b > 0 and (_root(b, 6) or (b % 27 == 0 and _root(b // 27, 6))):
            return 12
        if _root(b, 3) is not None:
            return 4
        if (b > 0 and _root(b, 2)) or (b < 0 and b % 27 == 0 and _root(-b // 27, 2)):
            return 3
        return 1
    if D == -4:
        if b != 0 or a == 0:
            return None
        if (a < 0 and _root(-a, 4)) or (a > 0 and a % 4 == 0 and _root(a // 4, 4)):
            return 8
        if _root(abs(a), 2):
            return 4
        return 2
    if D in _SCALED_ROWS:
        A, B, d = _SCALED_ROWS[D]
        if a == 0 or a % A:
            return None
        c = _root(a // A, 2)
        if c and b in (B * c**3, -B * c**3):
            return d
    return None
