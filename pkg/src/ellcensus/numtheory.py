"""Integer and modular primitives: sieving, primality, factorization,
quadratic residues and the classical arithmetic functions.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator

import numpy as np

from .errors import (
    DomainError,
    EmptyDomainError,
    FactorizationTimeout,
    OutOfRangeError,
)

SIEVE_LIMIT = 10**9
FACTOR_LIMIT = 10**18
TRIAL_BOUND = 10**5
RHO_BUDGET = 10**7
_SEGMENT = 1 << 20

# (bound, bases): the bases give a deterministic strong-pseudoprime test for n < bound.
_MR_TABLE = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3_317_044_064_679_887_385_961_981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)
MR_CERTIFIED_LIMIT = _MR_TABLE[-1][0]


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(limit) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    return np.flatnonzero(flags).astype(np.int64)


_TRIAL_PRIMES: list[int] = _simple_sieve(TRIAL_BOUND).tolist()
_SMALL_PRIMES = tuple(_TRIAL_PRIMES[:25])  # primes below 100


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """Primes in the closed interval ``[lo, hi]`` as an int64 array.

    Uses a segmented sieve so memory stays bounded by the segment size plus
    the base primes up to ``sqrt(hi)``.
    """
    lo = max(int(lo), 2)
    hi = int(hi)
    if hi < lo:
        return np.zeros(0, dtype=np.int64)
    if hi <= _SEGMENT:
        small = _simple_sieve(hi)
        return small[small >= lo]
    base = _simple_sieve(math.isqrt(hi))
    chunks = []
    for start in range(lo, hi + 1, _SEGMENT):
        stop = min(start + _SEGMENT, hi + 1)
        seg = np.ones(stop - start, dtype=bool)
        for q in base.tolist():
            if q * q >= stop:
                break
            first = max(q * q, -(-start // q) * q)
            seg[first - start :: q] = False
        chunks.append(np.flatnonzero(seg).astype(np.int64) + start)
    return np.concatenate(chunks)


def iter_primes(lo: int, hi: int) -> Iterator[int]:
    """Yield the primes in ``[lo, hi]`` one segment at a time."""
    start = max(int(lo), 2)
    while start <= hi:
        stop = min(start + _SEGMENT - 1, hi)
        yield from primes_in_range(start, stop).tolist()
        start = stop + 1


def sieve_primes(limit: int) -> list[int]:
    """Ascending list of the primes ``<= limit``."""
    if limit < 2:
        raise EmptyDomainError(f"no primes below {limit}")
    if limit > SIEVE_LIMIT:
        raise OutOfRangeError(f"sieve limit {limit} exceeds {SIEVE_LIMIT}")
    return primes_in_range(2, limit).tolist()


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, certified for ``n < 3.317e24``."""
    if n < 0:
        raise DomainError("is_prime expects a nonnegative integer")
    if n >= MR_CERTIFIED_LIMIT:
        raise OutOfRangeError(f"{n} is beyond the certified Miller-Rabin range")
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if n < 97 * 97:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = next(b for bound, b in _MR_TABLE if n < bound)
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``value = prod(p**e for p, e in factors)``."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def divisors(self) -> list[int]:
        """All positive divisors in ascending order."""
        ranges = [[p**k for k in range(e + 1)] for p, e in self.factors]
        return sorted(math.prod(c) for c in product(*ranges))

    def __iter__(self):
        return iter(self.factors)


def _brent(n: int, budget: int) -> tuple[int | None, int]:
    """One Pollard-Brent run per increment ``c``; returns (factor, steps used)."""
    used = 0
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            r *= 2
            if used > budget:
                return None, used
        if g == n:
            # batch overshot: back up and step one at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g, used
    return None, used


def _split(n: int, out: dict[int, int]) -> None:
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out)
        _split(r, out)
        return
    d, _ = _brent(n, RHO_BUDGET)
    if d is None:
        raise FactorizationTimeout(f"could not split {n} within {RHO_BUDGET} iterations")
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    """Complete factorization: trial division to 1e5, then Pollard-Brent."""
    if n < 1:
        raise DomainError("factorize expects a positive integer")
    if n > FACTOR_LIMIT:
        raise OutOfRangeError(f"{n} exceeds the factorization limit {FACTOR_LIMIT}")
    found: dict[int, int] = {}
    m = n
    for q in _TRIAL_PRIMES:
        if q * q > m:
            break
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            found[q] = e
    if m > 1:
        _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def _check_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    _check_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sqrt_mod(a: int, p: int) -> int | None:
    """Square root of ``a`` modulo an odd prime, or ``None`` for a non-residue.

    Tonelli-Shanks; the root returned is the smaller of ``r`` and ``p - r``.
    """
    _check_odd_prime(p)
    return _sqrt_mod(a % p, p)


def _sqrt_mod(a: int, p: int) -> int | None:
    # unchecked: a already reduced, p an odd prime
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def nonresidue(p: int) -> int:
    """Smallest quadratic non-residue modulo an odd prime."""
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    return z


def von_mangoldt(n: int) -> float:
    if n < 1:
        raise DomainError("von_mangoldt expects n >= 1")
    if n == 1:
        return 0.0
    f = factorize(n)
    return math.log(f.factors[0][0]) if f.is_prime_power() else 0.0


def mangoldt_table(limit: int) -> np.ndarray:
    """Array ``L`` with ``L[k] = Lambda(k)`` for ``0 <= k <= limit`` (``L[0] = 0``)."""
    table = np.zeros(limit + 1, dtype=np.float64)
    primes = primes_in_range(2, limit)
    table[primes] = np.log(primes.astype(np.float64))
    for q in primes[primes <= math.isqrt(limit)].tolist():
        pk = q * q
        while pk <= limit:
            table[pk] = math.log(q)
            pk *= q
    return table


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError("euler_phi expects n >= 1")
    result = n
    for q, _ in factorize(n):
        result -= result // q
    return result


def moebius(n: int) -> int:
    if n < 1:
        raise DomainError("moebius expects n >= 1")
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f.factors) % 2 else 1
