"""Group orders ``#E(F_p)``, point orders and group structure."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import CurveFp, Point
from .errors import (
    AmbiguousOrderError,
    DiscreteLogError,
    DomainError,
    OracleBoundError,
    UndecidedStructureError,
)
from .numtheory import factorize, nonresidue

EXHAUSTIVE_LIMIT = 10**6
BSGS_LIMIT = 10**12
# below this, the vectorized Legendre sum beats baby-step giant-step
AUTO_CUTOFF = 20000
MESTRE_POINTS = 8
STRUCTURE_SAMPLES = 32
STRUCTURE_EXACT_BELOW = 200


def hasse_interval(p: int) -> tuple[int, int]:
    """Integer range of ``n`` with ``|p + 1 - n| <= 2 sqrt(p)``."""
    w = math.isqrt(4 * p)
    return p + 1 - w, p + 1 + w


def order_exhaustive(curve: CurveFp) -> int:
    """``p + 1 + sum_x (x^3 + a x + b | p)``, vectorized over all ``x``."""
    p = curve.p
    if p > EXHAUSTIVE_LIMIT:
        raise OracleBoundError(f"exhaustive count refused above p = {EXHAUSTIVE_LIMIT}")
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    r = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    chi[r * r % p] = 1
    x = np.arange(p, dtype=np.int64)
    f = ((x * x % p) * x + curve.a * x + curve.b) % p
    return p + 1 + int(chi[f].sum(dtype=np.int64))


def point_order(curve: CurveFp, P: Point, n: int) -> int:
    """Exact order of ``P`` given any multiple ``n`` of it (normally ``#E``)."""
    curve._check(P)
    if curve._mul(n, P) is not None:
        raise DomainError(f"{n} does not annihilate {P}")
    order = n
    for q, e in factorize(n):
        for _ in range(e):
            if curve._mul(order // q, P) is None:
                order //= q
            else:
                break
    return order


def _annihilator(curve: CurveFp, P: Point, lo: int, hi: int) -> int:
    """Some ``m`` in ``[lo, hi]`` with ``m P = O`` (baby-step giant-step)."""
    width = hi - lo
    step = math.isqrt(width) + 1
    baby: dict[Point, int] = {}
    R: Point = None
    for j in range(step):
        baby.setdefault(R, j)
        R = curve._add(R, P)
    giant = curve.neg(curve._mul(step, P))
    # looking for lo*P + (i*step + j)*P = O, i.e. j*P = -lo*P - i*step*P
    target = curve.neg(curve._mul(lo, P))
    for i in range(step + 1):
        j = baby.get(target, -1)
        if j >= 0 and i * step + j <= width:
            return lo + i * step + j
        target = curve._add(target, giant)
    raise DiscreteLogError(f"no multiple of the order of {P} in [{lo}, {hi}]")


def _sample_points(curve: CurveFp, count: int):
    """Deterministic stream of affine points, skipping 2-torsion."""
    found = 0
    p = curve.p
    x = 0
    while found < count and x < p:
        P = curve.lift_x(x)
        x += 1
        if P is not None and P[1] != 0:
            found += 1
            yield P


def _multiples(step: int, lo: int, hi: int) -> list[int]:
    first = -(-lo // step) * step
    return list(range(first, hi + 1, step))


def order_bsgs(curve: CurveFp) -> int:
    """Shanks-Mestre search of the Hasse interval.

    Point orders from up to eight points of ``E`` are combined by lcm; when
    several multiples still fit the interval, points of the quadratic twist
    (order ``2p + 2 - n``) are used to discard candidates.
    """
    p = curve.p
    if p > BSGS_LIMIT:
        raise OracleBoundError(f"baby-step giant-step refused above p = {BSGS_LIMIT}")
    lo, hi = hasse_interval(p)
    exponent = 1
    candidates = list(range(lo, hi + 1))
    for P in _sample_points(curve, MESTRE_POINTS):
        m = _annihilator(curve, P, lo, hi)
        exponent = math.lcm(exponent, point_order(curve, P, m))
        candidates = _multiples(exponent, lo, hi)
        if len(candidates) == 1:
            return candidates[0]
    twist = curve.twist(nonresidue(p))
    twist_exponent = 1
    for Q in _sample_points(twist, MESTRE_POINTS):
        m = _annihilator(twist, Q, lo, hi)
        twist_exponent = math.lcm(twist_exponent, point_order(twist, Q, m))
        candidates = [n for n in candidates if (2 * p + 2 - n) % twist_exponent == 0]
        if len(candidates) == 1:
            return candidates[0]
    if p <= EXHAUSTIVE_LIMIT:
        return order_exhaustive(curve)
    raise AmbiguousOrderError(f"{len(candidates)} candidate orders remain for p = {p}")


def group_order(curve: CurveFp) -> int:
    """``#E(F_p)`` by whichever method is faster at this size."""
    if curve.p < AUTO_CUTOFF:
        return order_exhaustive(curve)
    return order_bsgs(curve)


@dataclass(frozen=True)
class GroupStructure:
    """``E(F_p) = Z/n1 x Z/n2`` with ``n2 | n1``.

    ``exact`` is False when a non-cyclic verdict rests on random sampling.
    """

    n: int
    n1: int
    n2: int
    cyclic: bool
    exact: bool = True


def group_structure(curve: CurveFp, n: int) -> GroupStructure:
    p = curve.p
    if p > EXHAUSTIVE_LIMIT:
        raise OracleBoundError(f"structure determination refused above p = {EXHAUSTIVE_LIMIT}")
    if p < STRUCTURE_EXACT_BELOW:
        exponent = 1
        for P in curve.points():
            exponent = math.lcm(exponent, point_order(curve, P, n))
        return GroupStructure(n, exponent, n // exponent, exponent == n)
    exponent = 1
    for P in _sample_points(curve, STRUCTURE_SAMPLES):
        exponent = math.lcm(exponent, point_order(curve, P, n))
        if exponent == n:
            return GroupStructure(n, n, 1, True)
    n2 = n // exponent
    if exponent % n2 or (p - 1) % n2:
        raise UndecidedStructureError(
            f"sampled exponent {exponent} is inconsistent with n = {n} over F_{p}"
        )
    return GroupStructure(n, exponent, n2, False, exact=False)
