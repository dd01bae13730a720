"""Prime sweeps over a curve: per-prime records, prime-order counts, Brun sums,
predicted counts, the Lambda-weighted measure and a few analytic sanity checks.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import integrate

from .curve import CurveQ, reduce
from .density import P0_REFERENCE
from .errors import ConfigurationError, DomainError, OutOfRangeError
from .numtheory import factorize, is_prime, mangoldt_table, primes_in_range
from .order import group_order, group_structure, point_order

CENSUS_LIMIT = 10**8
MEASURE_LIMIT = 10**5
SHORT_INTERVAL_LIMIT = 10**8

PRIME = "prime"
PRIME_POWER = "prime_power"
COMPOSITE = "composite"
UNIT = "unit"
MODES = (PRIME, PRIME_POWER)

CSV_COLUMNS = ("p", "n", "a_p", "t", "n_over_t", "primality_class", "point_order", "cyclic")


def primality_class(m: int) -> str:
    if m == 1:
        return UNIT
    if is_prime(m):
        return PRIME
    return PRIME_POWER if factorize(m).is_prime_power() else COMPOSITE


@dataclass(frozen=True)
class CensusRecord:
    p: int
    n: int
    a_p: int
    t: int
    n_over_t: int | None
    primality_class: str | None
    point_order: int | None = None
    cyclic: bool | None = None

    def counted(self, mode: str) -> bool:
        if mode == PRIME:
            return self.primality_class == PRIME
        return self.primality_class in (PRIME, PRIME_POWER)


def census_record(curve: CurveQ, p: int, t: int = 1, structure: bool = False) -> CensusRecord:
    E = reduce(curve, p)
    n = group_order(E)
    quotient = n // t if n % t == 0 else None
    order = None
    if curve.generator is not None:
        gx, gy = curve.generator
        order = point_order(E, (gx % p, gy % p), n)
    cyclic = group_structure(E, n).cyclic if structure else None
    return CensusRecord(
        p=p,
        n=n,
        a_p=p + 1 - n,
        t=t,
        n_over_t=quotient,
        primality_class=None if quotient is None else primality_class(quotient),
        point_order=order,
        cyclic=cyclic,
    )


def _records_chunk(curve: CurveQ, primes: list[int], t: int, structure: bool) -> list[CensusRecord]:
    return [census_record(curve, p, t, structure) for p in primes]


@dataclass(frozen=True)
class CensusReport:
    label: str
    x: int
    t: int
    mode: str
    records: tuple[CensusRecord, ...]
    pi_count: int
    pi_prime_power_count: int
    brun_partial: float
    delta: float
    predicted: float | None
    predicted_integral: float | None
    excluded_bad_primes: tuple[int, ...] = ()
    warnings: tuple[str, ...] = field(default=())

    @property
    def counted(self) -> list[CensusRecord]:
        return [r for r in self.records if r.counted(self.mode)]

    def to_csv(self, counted_only: bool = False) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.counted if counted_only else self.records:
            row = [getattr(r, c) for c in CSV_COLUMNS]
            writer.writerow(["" if v is None else str(v).lower() if isinstance(v, bool) else v for v in row])
        return buf.getvalue()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["records"] = [asdict(r) for r in self.records]
        d["counted"] = len(self.counted)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _normalize_mode(mode: str) -> str:
    mode = mode.replace("-", "_")
    if mode not in MODES:
        raise DomainError(f"unknown census mode {mode!r}")
    return mode


def run_census(
    curve: CurveQ,
    x: int,
    t: int = 1,
    mode: str = PRIME,
    delta: float | None = None,
    structure: bool = False,
    workers: int = 1,
) -> CensusReport:
    """Sweep the good primes ``3 < p <= x`` and count those with ``#E(F_p)/t`` prime.

    In ``prime_power`` mode, quotients that are proper prime powers are
    counted as well.  ``delta`` feeds the predicted counts and defaults to
    the Koblitz constant.  Records are merged in ascending ``p`` whatever
    the worker count, so reports are reproducible.
    """
    mode = _normalize_mode(mode)
    if t < 1:
        raise DomainError("divisor t must be >= 1")
    if x > CENSUS_LIMIT:
        raise OutOfRangeError(f"census bound {x} exceeds {CENSUS_LIMIT}")
    x = int(x)
    primes = primes_in_range(2, x).tolist()
    bad = tuple(p for p in primes if curve.discriminant % p == 0)
    good = [p for p in primes if curve.is_good_prime(p)]

    if workers > 1 and len(good) > 256:
        size = -(-len(good) // (workers * 4))
        chunks = [good[i : i + size] for i in range(0, len(good), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _records_chunk,
                [curve] * len(chunks),
                chunks,
                [t] * len(chunks),
                [structure] * len(chunks),
            )
            records = tuple(r for part in parts for r in part)
    else:
        records = tuple(_records_chunk(curve, good, t, structure))

    warnings = []
    if records and all(r.n_over_t is None for r in records):
        warnings.append(f"t = {t} divides no group order up to {x}")
    counted = [r for r in records if r.counted(mode)]
    delta = P0_REFERENCE if delta is None else delta
    predicted = predicted_integral = None
    if x >= 10:
        predicted = predicted_count(delta, x, "leading")
        if t == 1:
            predicted_integral = predicted_count(delta, x, "integral_conj")
        elif x > t + 1:
            predicted_integral = predicted_count(delta, x, "integral_shifted", divisor=t)
    brun = 0.0
    for r in counted:
        brun += 1.0 / r.p
    return CensusReport(
        label=curve.label,
        x=x,
        t=t,
        mode=mode,
        records=records,
        pi_count=sum(r.primality_class == PRIME for r in records),
        pi_prime_power_count=sum(r.primality_class in (PRIME, PRIME_POWER) for r in records),
        brun_partial=brun,
        delta=delta,
        predicted=predicted,
        predicted_integral=predicted_integral,
        excluded_bad_primes=bad,
        warnings=tuple(warnings),
    )


def brun_partial_sum(report: CensusReport) -> float:
    """``sum 1/p`` over the counted records, accumulated in ascending ``p``."""
    total = 0.0
    for r in sorted(report.counted, key=lambda r: r.p):
        total += 1.0 / r.p
    return total


def predicted_count(delta: float, x: float, form: str = "leading", divisor: int = 8) -> float:
    """Predicted number of elliptic primes up to ``x``.

    ``leading``: ``delta x / log^2 x``.
    ``integral_conj``: ``delta * int_2^x dt / (t log(t + 1))``.
    ``integral_shifted``: ``delta * int_{d+1}^x dt / ((log(t + 1) - log d) log t)``.
    """
    if x < 10:
        raise DomainError("predicted_count needs x >= 10")
    if form == "leading":
        return delta * x / math.log(x) ** 2
    if form == "integral_conj":
        value, _ = integrate.quad(lambda s: 1 / (s * math.log(s + 1)), 2, x, epsrel=1e-10, limit=500)
        return delta * value
    if form == "integral_shifted":
        lower = divisor + 1
        if x < lower:
            raise DomainError(f"shifted integrand is not positive below t = {lower}")
        log_d = math.log(divisor)
        value, _ = integrate.quad(
            lambda s: 1 / ((math.log(s + 1) - log_d) * math.log(s)), lower, x, epsrel=1e-10, limit=500
        )
        return delta * value
    raise DomainError(f"unknown form {form!r}")


def measure_terms(curve: CurveQ, x: int):
    """Yield ``(p, weight)`` for the nonzero terms of the Lambda-weighted measure.

    ``weight = (1 / (4 sqrt p)) * Lambda(n) / log n`` when the registry
    generator reduces to a point of full order ``n = #E(F_p)`` and ``n`` is a
    prime power ``q^k`` (so ``Lambda(n)/log n = 1/k``); other primes give 0.
    """
    if curve.generator is None:
        raise ConfigurationError(f"curve {curve.label} has no registry generator")
    if x > MEASURE_LIMIT:
        raise OutOfRangeError(f"measure_sum bound {x} exceeds {MEASURE_LIMIT}")
    gx, gy = curve.generator
    for p in primes_in_range(5, x).tolist():
        if not curve.is_good_prime(p):
            continue
        E = reduce(curve, p)
        n = group_order(E)
        if point_order(E, (gx % p, gy % p), n) != n:
            continue
        f = factorize(n)
        if f.is_prime_power():
            yield p, 1.0 / (4.0 * math.sqrt(p)) / f.factors[0][1]


def measure_sum(curve: CurveQ, x: int) -> float:
    total = 0.0
    for _, w in measure_terms(curve, x):
        total += w
    return total


def _short_interval_bounds(p: int) -> tuple[int, int]:
    w = math.isqrt(4 * p)
    return max(1, p - w), p + w


def short_interval_lambda(p: int) -> float:
    """``sum Lambda(n)`` over the integers ``p - 2 sqrt p <= n <= p + 2 sqrt p``."""
    if p > SHORT_INTERVAL_LIMIT:
        raise OutOfRangeError(f"{p} exceeds {SHORT_INTERVAL_LIMIT}")
    lo, hi = _short_interval_bounds(p)
    total = float(np.log(primes_in_range(lo, hi).astype(np.float64)).sum())
    for q in primes_in_range(2, math.isqrt(hi)).tolist():
        pk = q * q
        while pk <= hi:
            if pk >= lo:
                total += math.log(q)
            pk *= q
    return total


@dataclass(frozen=True)
class ShortIntervalSurvey:
    lo: int
    hi: int
    primes: int
    exceptions: int

    @property
    def exception_fraction(self) -> float:
        return self.exceptions / self.primes if self.primes else 0.0


def short_interval_survey(lo: int, hi: int) -> ShortIntervalSurvey:
    """Count primes ``p`` in ``[lo, hi]`` whose interval sum fails to exceed ``2 sqrt p``."""
    top = hi + math.isqrt(4 * hi)
    cum = np.concatenate(([0.0], np.cumsum(mangoldt_table(top))))
    ps = primes_in_range(lo, hi)
    w = np.array([math.isqrt(4 * p) for p in ps.tolist()], dtype=np.int64)
    left = np.maximum(ps - w, 1)
    sums = cum[ps + w + 1] - cum[left]
    exceptions = int(np.count_nonzero(sums <= 2 * np.sqrt(ps.astype(np.float64))))
    return ShortIntervalSurvey(lo, hi, len(ps), exceptions)


@dataclass(frozen=True)
class BTWitness:
    x: float
    primes_in_window: int
    bound: float


def brun_titchmarsh_check(x: float) -> tuple[bool, BTWitness]:
    """Check ``pi(x + 4 sqrt x) - pi(x) <= 12 sqrt(x) / log x``."""
    if x > SHORT_INTERVAL_LIMIT:
        raise OutOfRangeError(f"{x} exceeds {SHORT_INTERVAL_LIMIT}")
    lo = math.floor(x) + 1
    hi = math.floor(x + 4 * math.sqrt(x))
    count = len(primes_in_range(lo, hi))
    bound = 12 * math.sqrt(x) / math.log(x)
    return count <= bound, BTWitness(x, count, bound)


def upper_bound_check(report: CensusReport) -> bool:
    """``pi(x, E) <= 12 x / log^2 x`` for the report's count."""
    if report.x < 100:
        raise DomainError("upper_bound_check needs x >= 100")
    return report.pi_count <= 12 * report.x / math.log(report.x) ** 2
