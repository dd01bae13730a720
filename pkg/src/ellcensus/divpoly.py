"""Division polynomials evaluated at a point of ``E(F_p)``.

Only the values ``psi_m(x_P, y_P) mod p`` are ever needed, so nothing is
expanded symbolically.  Even indices carry a ``1/(2y)`` factor; at a
2-torsion point that factor is undefined and the torsion test falls back to
the group law.
"""

from __future__ import annotations

import logging

from .curve import CurveFp, Point
from .errors import DegenerateEvaluation, DomainError, UndefinedEvaluationError
from .numtheory import factorize

log = logging.getLogger(__name__)


class DivPolyContext:
    """Memo of ``psi_m(P)`` values for one curve.

    Not thread-safe: the cache is mutated on every evaluation, so give each
    worker its own context.
    """

    def __init__(self, curve: CurveFp):
        self.curve = curve
        self.cache: dict[Point, dict[int, int]] = {}

    def _base(self, m: int, P: tuple[int, int]) -> int:
        p, a, b = self.curve.p, self.curve.a, self.curve.b
        x, y = P
        if m == 0:
            return 0
        if m == 1:
            return 1
        if m == 2:
            return 2 * y % p
        if m == 3:
            return (3 * x**4 + 6 * a * x**2 + 12 * b * x - a * a) % p
        # m == 4
        inner = x**6 + 5 * a * x**4 + 20 * b * x**3 - 5 * a * a * x * x - 4 * a * b * x - 8 * b * b - a**3
        return 4 * y * inner % p

    def _psi(self, m: int, P: tuple[int, int], memo: dict[int, int] | None) -> int:
        if memo is not None and m in memo:
            return memo[m]
        if m <= 4:
            value = self._base(m, P)
        else:
            p = self.curve.p
            k = m // 2
            psi = lambda i: self._psi(i, P, memo)  # noqa: E731
            if m % 2:
                value = (psi(k + 2) * pow(psi(k), 3, p) - psi(k - 1) * pow(psi(k + 1), 3, p)) % p
            else:
                y2 = 2 * P[1] % p
                if y2 == 0:
                    raise DegenerateEvaluation(f"2y = 0 at {P}; psi_{m} needs 1/(2y)")
                bracket = psi(k + 2) * psi(k - 1) ** 2 - psi(k - 2) * psi(k + 1) ** 2
                value = psi(k) * bracket % p * pow(y2, -1, p) % p
        if memo is not None:
            memo[m] = value
        return value

    def eval(self, m: int, P: Point, memoize: bool = True) -> int:
        """``psi_m(P) mod p`` by the doubling recurrences."""
        if P is None:
            raise UndefinedEvaluationError("division polynomials are not evaluated at O")
        if m < 1:
            raise DomainError("division polynomial index must be >= 1")
        self.curve._check(P)
        memo = self.cache.setdefault(P, {}) if memoize else None
        return self._psi(m, P, memo)

    def torsion_test(self, m: int, P: Point) -> bool:
        """Whether ``m P = O``, decided by ``psi_m(P) == 0``."""
        if m < 2:
            raise DomainError("torsion_test expects m >= 2")
        try:
            return self.eval(m, P) == 0
        except DegenerateEvaluation:
            log.debug("psi_%d degenerate at %s over F_%d; using the group law", m, P, self.curve.p)
            return self.curve._mul(m, P) is None

    def primitive_test(self, P: Point, n: int) -> bool:
        """``P`` generates a group of order ``n`` iff ``psi_{n/q}(P) != 0`` for all ``q | n``."""
        if P is None:
            return n == 1
        self.curve._check(P)
        for q in factorize(n).primes:
            m = n // q
            if m == 1:
                continue  # psi_1 = 1
            if self.torsion_test(m, P):
                return False
        return True


def divpoly_eval(ctx: DivPolyContext, m: int, P: Point) -> int:
    return ctx.eval(m, P)


def torsion_test(ctx: DivPolyContext, m: int, P: Point) -> bool:
    return ctx.torsion_test(m, P)


def divpoly_primitive_test(ctx: DivPolyContext, P: Point, n: int) -> bool:
    return ctx.primitive_test(P, n)
