"""Short Weierstrass curves ``y^2 = x^3 + a x + b`` over Q and over F_p.

Points on ``E(F_p)`` are plain tuples ``(x, y)`` of reduced residues; the
identity is ``None`` (exported as :data:`O`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import (
    BadReductionError,
    DomainError,
    InvalidPointError,
    OracleBoundError,
    SmallCharacteristicError,
)
from .numtheory import _sqrt_mod, is_prime

Point = Optional[Tuple[int, int]]
O: Point = None

ENUMERATION_LIMIT = 10**4


def discriminant(a: int, b: int) -> int:
    return -16 * (4 * a**3 + 27 * b**2)


@dataclass(frozen=True)
class CurveQ:
    """An integral model with optional registry metadata (never computed here)."""

    label: str
    a: int
    b: int
    conductor: int | None = None
    cm_discriminant: int | None = None
    rank: int | None = None
    torsion_order: int | None = None
    generator: tuple[int, int] | None = None
    d_E: int | None = None
    notes: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.discriminant == 0:
            raise DomainError(f"curve {self.label!r} is singular")
        if self.generator is not None:
            x, y = self.generator
            if y * y != x**3 + self.a * x + self.b:
                raise InvalidPointError(f"generator {self.generator} is not on {self.label}")

    @property
    def discriminant(self) -> int:
        return discriminant(self.a, self.b)

    def is_good_prime(self, p: int) -> bool:
        """True when ``p > 3`` and the model has good reduction at ``p``."""
        return p > 3 and self.discriminant % p != 0

    def reduce(self, p: int) -> "CurveFp":
        return reduce(self, p)

    def __str__(self):
        return f"{self.label}: y^2 = x^3 {_signed(self.a, 'x')} {_signed(self.b, '')}"


def _signed(c: int, var: str) -> str:
    return f"{'-' if c < 0 else '+'} {abs(c)}{var}"


def reduce(curve: CurveQ, p: int) -> "CurveFp":
    """Reduce an integral model modulo a prime of good reduction.

    ``p = 2`` always divides the discriminant, so it is reported as an
    unsupported characteristic; ``p = 3`` is reported as bad reduction when
    it divides the discriminant and as unsupported otherwise.
    """
    if p < 2 or not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        raise SmallCharacteristicError("characteristic 2 is not supported")
    if curve.discriminant % p == 0:
        raise BadReductionError(f"{p} divides the discriminant of {curve.label}")
    if p == 3:
        raise SmallCharacteristicError("characteristic 3 is not supported")
    return CurveFp(p, curve.a % p, curve.b % p)


@dataclass(frozen=True)
class CurveFp:
    """The curve ``y^2 = x^3 + a x + b`` over ``F_p`` with affine group law.

    The constructor does not test primality of ``p`` (``reduce`` does); it
    only rejects singular coefficient pairs.
    """

    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.p <= 3:
            raise SmallCharacteristicError(f"characteristic {self.p} is not supported")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if (4 * self.a**3 + 27 * self.b**2) % self.p == 0:
            raise BadReductionError(f"singular curve over F_{self.p}")

    def rhs(self, x: int) -> int:
        return (x * x * x + self.a * x + self.b) % self.p

    def contains(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return 0 <= x < self.p and 0 <= y < self.p and (y * y - self.rhs(x)) % self.p == 0

    def _check(self, P: Point) -> None:
        if not self.contains(P):
            raise InvalidPointError(f"{P} is not on y^2 = x^3 + {self.a}x + {self.b} over F_{self.p}")

    def neg(self, P: Point) -> Point:
        if P is None:
            return None
        return (P[0], (-P[1]) % self.p)

    def add(self, P: Point, Q: Point) -> Point:
        self._check(P)
        self._check(Q)
        return self._add(P, Q)

    def _add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        p = self.p
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return None
            lam = (3 * x1 * x1 + self.a) * pow(2 * y1, -1, p) % p
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (lam * lam - x1 - x2) % p
        return (x3, (lam * (x1 - x3) - y1) % p)

    def scalar_mul(self, k: int, P: Point) -> Point:
        """``k * P`` by double-and-add; negative ``k`` multiplies ``-P``."""
        self._check(P)
        return self._mul(k, P)

    def _mul(self, k: int, P: Point) -> Point:
        if k < 0:
            k, P = -k, self.neg(P)
        R: Point = None
        while k:
            if k & 1:
                R = self._add(R, P)
            P = self._add(P, P)
            k >>= 1
        return R

    def lift_x(self, x: int) -> Point:
        """The point with abscissa ``x`` and canonical ordinate, or ``None``
        when ``x^3 + a x + b`` is a non-residue."""
        y = _sqrt_mod(self.rhs(x), self.p)
        return None if y is None else (x % self.p, y)

    def twist(self, d: int) -> "CurveFp":
        """Quadratic twist ``y^2 = x^3 + a d^2 x + b d^3`` by a non-residue ``d``."""
        return CurveFp(self.p, self.a * d * d, self.b * d**3)

    def points(self):
        """Iterate affine points in order of ``x`` (both ordinates per ``x``)."""
        p = self.p
        for x in range(p):
            y = _sqrt_mod(self.rhs(x), p)
            if y is None:
                continue
            yield (x, y)
            if y:
                yield (x, p - y)


def add(curve: CurveFp, P: Point, Q: Point) -> Point:
    return curve.add(P, Q)


def scalar_mul(curve: CurveFp, k: int, P: Point) -> Point:
    return curve.scalar_mul(k, P)


def enumerate_points(curve: CurveFp) -> list[Point]:
    """Every point of ``E(F_p)`` including the identity (brute force)."""
    if curve.p > ENUMERATION_LIMIT:
        raise OracleBoundError(f"enumeration refused above p = {ENUMERATION_LIMIT}")
    return [O, *curve.points()]
