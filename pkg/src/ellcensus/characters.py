"""Additive characters of a cyclic ``E(F_p)`` and primitive-point indicators.

A primitive point ``T`` identifies ``E(F_p)`` with ``Z/nZ`` through the
discrete logarithm, and the character ``chi(Q) = exp(2 pi i log_T(Q) / n)``
is built on top of that.  The two characteristic-function identities are
evaluated twice: once as literal floating-point character sums (rounded,
with a 1e-6 integrity check) and once through integer residues.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .curve import CurveFp, Point
from .errors import (
    CyclicityRequiredError,
    DiscreteLogError,
    DomainError,
    NumericIntegrityError,
    OracleBoundError,
)
from .numtheory import factorize, is_prime
from .order import group_structure, point_order

DLOG_LIMIT = 10**8
ROUNDING_TOLERANCE = 1e-6
_ROW_CHUNK = 256


def _baby_table(curve: CurveFp, T: Point, step: int) -> dict[Point, int]:
    table: dict[Point, int] = {}
    R: Point = None
    for j in range(step):
        table.setdefault(R, j)
        R = curve._add(R, T)
    return table


def _bsgs_log(curve, T, n, P, table, step) -> int:
    giant = curve.neg(curve._mul(step, T))
    R = P
    for i in range(step + 1):
        j = table.get(R)
        if j is not None:
            return (i * step + j) % n
        R = curve._add(R, giant)
    raise DiscreteLogError(f"{P} is not in the subgroup generated by {T}")


def discrete_log(curve: CurveFp, T: Point, P: Point, n: int) -> int:
    """The ``m`` in ``[0, n)`` with ``m T = P``."""
    if n > DLOG_LIMIT:
        raise OracleBoundError(f"discrete log table refused for n > {DLOG_LIMIT}")
    curve._check(T)
    curve._check(P)
    step = math.isqrt(n) + 1
    return _bsgs_log(curve, T, n, P, _baby_table(curve, T, step), step)


class EllipticChar:
    """The additive character anchored at a primitive point ``T``.

    The baby-step table is built once in ``__init__``; afterwards the object
    is only read, so it may be shared between threads.
    """

    def __init__(self, curve: CurveFp, T: Point, n: int):
        if n > DLOG_LIMIT:
            raise OracleBoundError(f"discrete log table refused for n > {DLOG_LIMIT}")
        if T is None and n > 1 or point_order(curve, T, n) != n:
            raise CyclicityRequiredError(f"{T} does not generate a group of order {n}")
        self.curve = curve
        self.T = T
        self.n = n
        self._step = math.isqrt(n) + 1
        self._table = _baby_table(curve, T, self._step)
        self._squarefree = _squarefree_divisors(n)

    @classmethod
    def for_curve(cls, curve: CurveFp, n: int) -> "EllipticChar":
        """Anchor the character at the first primitive point found.

        Raises :class:`CyclicityRequiredError` for non-cyclic groups.
        """
        if not group_structure(curve, n).cyclic:
            raise CyclicityRequiredError(f"E(F_{curve.p}) is not cyclic")
        for P in curve.points():
            if lucas_primitive_test(curve, P, n):
                return cls(curve, P, n)
        if n == 1:
            return cls(curve, None, 1)
        raise CyclicityRequiredError(f"no primitive point found in E(F_{curve.p})")

    def log(self, P: Point) -> int:
        self.curve._check(P)
        return _bsgs_log(self.curve, self.T, self.n, P, self._table, self._step)

    def __call__(self, P: Point) -> complex:
        return cmath.exp(2j * math.pi * self.log(P) / self.n)


def _squarefree_divisors(n: int) -> list[tuple[int, int]]:
    """Pairs ``(d, mu(d))`` over the squarefree divisors of ``n``."""
    primes = factorize(n).primes
    out = []
    for size in range(len(primes) + 1):
        for combo in combinations(primes, size):
            out.append((math.prod(combo), -1 if size % 2 else 1))
    return sorted(out)


def lucas_primitive_test(curve: CurveFp, P: Point, n: int) -> bool:
    """``P`` is primitive iff ``(n/q) P != O`` for every prime ``q | n``."""
    curve._check(P)
    if n == 1:
        return True
    if P is None:
        return False
    return all(curve._mul(n // q, P) is not None for q in factorize(n).primes)


def _round_indicator(total: complex) -> int:
    value = round(total.real)
    if abs(total - value) > ROUNDING_TOLERANCE or value not in (0, 1):
        raise NumericIntegrityError(f"character sum {total!r} is not an indicator value")
    return int(value)


def psi_divisor(char: EllipticChar, P: Point, exact: bool = False) -> int:
    """Divisor-sum indicator of primitivity.

    ``sum_{d | n} mu(d)/d sum_{0 <= t < d} exp(2 pi i t log_T(P) / d)``; the
    inner sum uses the order-``d`` character ``Q -> exp(2 pi i log_T(Q)/d)``.
    Non-squarefree ``d`` have ``mu(d) = 0`` and are skipped.
    """
    k = char.log(P)
    if exact:
        # inner geometric sum is d when d | k, else 0
        return sum(mu for d, mu in char._squarefree if k % d == 0)
    total = 0j
    for d, mu in char._squarefree:
        t = np.arange(d, dtype=np.int64)
        inner = np.exp(2j * np.pi * (t * k % d) / d).sum()
        total += mu / d * inner
    return _round_indicator(total)


def psi_divisor_free(char: EllipticChar, P: Point, exact: bool = False) -> int:
    """Divisor-free indicator of primitivity.

    ``sum_{gcd(m, n) = 1} (1/n) sum_{0 <= r < n} chi(r (m T - P))`` with
    ``log_T(r (m T - P)) = r (m - log_T P) mod n``.
    """
    n = char.n
    k = char.log(P)
    m = np.arange(n, dtype=np.int64)
    units = m[np.gcd(m, n) == 1]
    if exact:
        # inner sum is n * [m == k (mod n)]
        return int(np.count_nonzero(units == k))
    r = np.arange(n, dtype=np.int64)
    total = 0j
    for start in range(0, len(units), _ROW_CHUNK):
        rows = units[start : start + _ROW_CHUNK]
        phase = np.outer((rows - k) % n, r) % n
        total += np.exp(2j * np.pi * phase / n).sum() / n
    return _round_indicator(total)


def ramanujan_sums_check(n: int, k: int, r: int) -> tuple[complex, complex]:
    """The two complete geometric sums over a prime modulus.

    Returns ``(sum_{0<j<n} exp(-2 pi i j k / n), sum_{gcd(m,n)=1} exp(2 pi i r m / n))``;
    both equal -1 when ``n`` is prime and ``k, r`` are nonzero mod ``n``.
    """
    if not is_prime(n):
        raise DomainError(f"{n} is not prime")
    if k % n == 0 or r % n == 0:
        raise DomainError("k and r must be nonzero modulo n")
    j = np.arange(1, n, dtype=np.int64)
    first = np.exp(-2j * np.pi * (j * k % n) / n).sum()
    second = np.exp(2j * np.pi * (j * r % n) / n).sum()
    return complex(first), complex(second)


@dataclass(frozen=True)
class IndicatorReport:
    p: int
    n: int
    cyclic: bool
    points: int
    disagreements: tuple[Point, ...]
    psi_total: int
    phi_n: int

    @property
    def ok(self) -> bool:
        return not self.disagreements and (not self.cyclic or self.psi_total == self.phi_n)


def indicator_equivalence(curve: CurveFp) -> IndicatorReport:
    """Run all primitivity indicators over every point of a small ``E(F_p)``.

    For a cyclic group the Lucas test, the division-polynomial test, both
    character sums (numeric and exact) and ``ord(P) = n`` must agree at every
    point, and the indicator must sum to ``phi(n)``.  Non-cyclic groups are
    reported with ``cyclic=False`` and only the first two tests compared.
    """
    from .divpoly import DivPolyContext
    from .numtheory import euler_phi
    from .order import group_order

    n = group_order(curve)
    pts: list[Point] = [None, *curve.points()]
    cyclic = group_structure(curve, n).cyclic
    ctx = DivPolyContext(curve)
    char = EllipticChar.for_curve(curve, n) if cyclic else None
    bad = []
    total = 0
    for P in pts:
        verdicts = {
            point_order(curve, P, n) == n,
            lucas_primitive_test(curve, P, n),
            ctx.primitive_test(P, n),
        }
        if char is not None:
            value = psi_divisor(char, P)
            verdicts |= {
                bool(value),
                bool(psi_divisor(char, P, exact=True)),
                bool(psi_divisor_free(char, P)),
                bool(psi_divisor_free(char, P, exact=True)),
            }
            total += value
        if len(verdicts) != 1:
            bad.append(P)
    return IndicatorReport(curve.p, n, cyclic, len(pts), tuple(bad), total, euler_phi(n))
