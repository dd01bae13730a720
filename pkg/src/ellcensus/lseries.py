"""Dirichlet coefficients ``a_n`` of ``L(E, s)`` from point counts."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .curve import CurveQ, reduce
from .errors import DomainError, OutOfRangeError
from .numtheory import primes_in_range
from .order import group_order

AN_LIMIT = 10**6


def ap_coefficient(curve: CurveQ, p: int) -> tuple[int, bool]:
    """``(a_p, bad)`` with ``a_p = p + 1 - #E(F_p)``.

    Primes dividing the discriminant, and ``p = 2``, get ``(0, True)``: their
    true local factors need a minimal model and Tate's algorithm.  A good
    ``p = 3`` is counted directly.
    """
    if p == 2 or curve.discriminant % p == 0:
        return 0, True
    if p == 3:
        count = 1 + sum(1 for x in range(3) for y in range(3) if (y * y - x**3 - curve.a * x - curve.b) % 3 == 0)
        return p + 1 - count, False
    return p + 1 - group_order(reduce(curve, p)), False


@dataclass(frozen=True)
class CoefficientTable:
    label: str
    limit: int
    a: tuple[int, ...]  # a[n] for 0 <= n <= limit, a[0] = 0
    bad_primes: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(n)
        return self.a[n]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(("n", "a_n"))
        for n in range(1, self.limit + 1):
            w.writerow((n, self.a[n]))
        return buf.getvalue()


def an_table(curve: CurveQ, limit: int) -> CoefficientTable:
    """``a_1 .. a_limit`` from ``a_p``, the prime-power recurrence and multiplicativity."""
    if not 1 <= limit <= AN_LIMIT:
        raise OutOfRangeError(f"limit must be in [1, {AN_LIMIT}]")
    a = [0] * (limit + 1)
    a[1] = 1
    bad = []
    # smallest prime factor
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in primes_in_range(2, limit).tolist():
        ap, is_bad = ap_coefficient(curve, p)
        if is_bad:
            bad.append(p)
        prev, cur, pk = 1, ap, p
        while pk <= limit:
            a[pk] = cur
            # bad primes keep 0; good ones follow a_{p^{k+1}} = a_p a_{p^k} - p a_{p^{k-1}}
            prev, cur = cur, 0 if is_bad else ap * cur - p * prev
            pk *= p
        block = spf[p :: p]
        block[block == 0] = p
    for n in range(2, limit + 1):
        p = int(spf[n])
        m, pk = n, 1
        while m % p == 0:
            m //= p
            pk *= p
        if m > 1:
            a[n] = a[pk] * a[m]
    return CoefficientTable(curve.label, limit, tuple(a), tuple(bad))


def q_expansion_text(table: CoefficientTable, terms: int) -> str:
    """``"q - q^7 - 5q^13 + ..."`` over ``n <= terms``, zero coefficients omitted."""
    if terms > table.limit:
        raise DomainError(f"table only reaches n = {table.limit}")
    if terms < 1:
        return ""
    parts = []
    for n in range(1, terms + 1):
        c = table.a[n]
        if c == 0:
            continue
        mono = "q" if n == 1 else f"q^{n}"
        mag = "" if abs(c) == 1 else str(abs(c))
        if not parts:
            parts.append(("-" if c < 0 else "") + mag + mono)
        else:
            parts.append(("- " if c < 0 else "+ ") + mag + mono)
    return " ".join(parts) if parts else "0"
