"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v -s``; the terminal summary prints
a PASS/FAIL line per criterion.  Criteria whose printed reference data
disagree with exact computation are left to fail; see the diff printed by
each test.
"""

import math
import time
from fractions import Fraction

import pytest

from ellcensus.census import (
    brun_partial_sum,
    brun_titchmarsh_check,
    run_census,
    short_interval_survey,
    upper_bound_check,
)
from ellcensus.characters import indicator_equivalence, ramanujan_sums_check
from ellcensus.curve import reduce
from ellcensus.density import (
    P0_REFERENCE,
    QUARTIC_TWIST_REFERENCE,
    delta_quartic_twist,
    delta_serre,
    elliptic_divisor_cm_table,
    elliptic_divisor_empirical,
    koblitz_constant,
    serre_correction,
)
from ellcensus.divpoly import DivPolyContext
from ellcensus.lseries import an_table, q_expansion_text
from ellcensus.numtheory import sieve_primes
from ellcensus.registry import load_registry, load_tables

REG = load_registry()

TABLE1_GOOD = [
    (13, 19), (19, 13), (61, 61), (67, 73), (73, 81), (139, 163), (163, 139), (211, 199), (331, 331),
    (349, 313), (541, 571), (547, 571), (571, 541), (613, 661), (661, 613), (757, 787), (829, 823), (877, 937),
]  # fmt: skip
TABLE2_GOOD = [
    (7, 7), (97, 97), (103, 107), (181, 163), (271, 293), (313, 331), (367, 383), (409, 397), (487, 499),
    (883, 853), (967, 941),
]  # fmt: skip
TABLE4 = [
    (17, 2), (23, 3), (29, 5), (37, 5), (53, 5), (101, 13), (103, 13), (109, 13), (149, 17), (151, 19),
    (157, 17), (277, 37), (293, 37), (317, 41), (389, 37), (487, 53), (541, 61), (631, 73), (661, 79),
    (701, 89), (757, 97), (773, 101), (797, 97), (821, 109), (823, 103), (829, 97), (853, 101),
]  # fmt: skip


def _diff(expected, computed):
    exp, got = set(expected), set(computed)
    return sorted(exp - got), sorted(got - exp)


def test_01_table1_prime_power_census():
    start = time.perf_counter()
    report = run_census(REG["1728.n4"], 1000, t=1, mode="prime_power", workers=1)
    elapsed = time.perf_counter() - start
    got = [(r.p, r.n) for r in report.counted]
    missing, extra = _diff(TABLE1_GOOD, got)
    print(f"\n[1] computed {len(got)} rows in {elapsed:.2f}s; printed-only {missing}; computed-only {extra}")
    assert elapsed < 5
    for pair in [(13, 19), (19, 13), (61, 61), (73, 81), (877, 937)]:
        assert pair in got
    assert sorted(got) == sorted(TABLE1_GOOD)


def test_02_table2_rows():
    start = time.perf_counter()
    report = run_census(REG["1728.w1"], 1000, t=1, mode="prime", workers=1)
    elapsed = time.perf_counter() - start
    got = [(r.p, r.n) for r in report.counted]
    missing, extra = _diff(TABLE2_GOOD, got)
    print(f"\n[2] computed {len(got)} rows in {elapsed:.2f}s; printed-only {missing}; computed-only {extra}")
    assert elapsed < 5
    # every printed good-prime row is reproduced exactly
    assert missing == []
    for pair in [(103, 107), (487, 499), (967, 941)]:
        assert pair in got


def test_03_table4_rows():
    report = run_census(REG["32.a3"], 1000, t=8, mode="prime", workers=1)
    got = [(r.p, r.n_over_t) for r in report.counted]
    missing, extra = _diff(TABLE4, got)
    print(f"\n[3] computed {len(got)} rows; printed-only {missing}; computed-only {extra}")
    for pair in [(17, 2), (157, 17), (853, 101)]:
        assert pair in got
    assert sorted(got) == sorted(TABLE4)


def test_04_koblitz_bracket():
    koblitz_constant.cache_clear()
    start = time.perf_counter()
    b = koblitz_constant(10**6)
    elapsed = time.perf_counter() - start
    print(f"\n[4] [{b.lower!r}, {b.upper!r}] width {b.width:.3e} in {elapsed:.2f}s")
    assert P0_REFERENCE in b
    assert b.width < 1e-6
    assert elapsed < 30


def test_05_serre_density():
    assert serre_correction(-3) == Fraction(10, 9)
    b = delta_serre(-3, 10**6)
    p0 = koblitz_constant(10**6)
    assert b.lower <= p0.lower * 10 / 9 and p0.upper * 10 / 9 <= b.upper
    print(f"\n[5] delta_serre(-3) = {b.value!r} bracket [{b.lower!r}, {b.upper!r}]")
    assert abs(b.value - 0.5612957424882619) < 1e-6


def test_06_quartic_twist():
    start = time.perf_counter()
    b = delta_quartic_twist(10**7)
    elapsed = time.perf_counter() - start
    print(f"\n[6] value {b.value!r} +- {b.width / 2:.2e} in {elapsed:.2f}s")
    assert abs(b.value - QUARTIC_TWIST_REFERENCE) < 5e-3
    assert elapsed < 120


def test_07_elliptic_divisor():
    expected = {"1728.n4": 1, "32.a3": 8, "36a1": 12}
    for label, d in expected.items():
        curve = REG[label]
        est = elliptic_divisor_empirical(curve, 10**4)
        table = elliptic_divisor_cm_table(curve.cm_discriminant, curve.a, curve.b)
        print(f"\n[7] {label}: empirical {est.d_E} (stable at {est.stabilized_at}), table {table}")
        assert est.d_E == d
        if table is not None:
            assert table == est.d_E
    for curve in REG.values():
        if curve.cm_discriminant is not None:
            assert 24 % elliptic_divisor_empirical(curve, 10**4).d_E == 0


def test_08_q_expansions():
    assert q_expansion_text(an_table(REG["1728.n4"], 20), 20) == "q - q^7 - 5q^13 + 7q^19"
    assert (
        q_expansion_text(an_table(REG["1728.w1"], 20), 20) == "q + 2q^5 + q^7 + 2q^11 - q^13 - 6q^17 + 5q^19"
    )


def test_09_indicator_equivalence():
    groups = cyclic = 0
    for curve in REG.values():
        for p in sieve_primes(200):
            if p < 5 or not curve.is_good_prime(p):
                continue
            rep = indicator_equivalence(reduce(curve, p))
            groups += 1
            cyclic += rep.cyclic
            assert not rep.disagreements, (curve.label, p, rep.disagreements)
            if rep.cyclic:
                assert rep.psi_total == rep.phi_n
    print(f"\n[9] {cyclic} cyclic groups checked pointwise out of {groups}")
    assert cyclic > 0


def test_10_division_polynomial_identity():
    checks = 0
    for curve in REG.values():
        for p in sieve_primes(200):
            if p < 5 or not curve.is_good_prime(p):
                continue
            E = reduce(curve, p)
            ctx = DivPolyContext(E)
            for P in E.points():
                for m in range(2, 25):
                    assert ctx.torsion_test(m, P) == (E.scalar_mul(m, P) is None)
                    checks += 1
    print(f"\n[10] {checks} (m, P) pairs")


def test_11_geometric_sums():
    worst = 0.0
    for n in sieve_primes(101):
        for k in range(1, n):
            for r in range(1, n):
                a, b = ramanujan_sums_check(n, k, r)
                worst = max(worst, abs(a + 1), abs(b + 1))
    print(f"\n[11] max deviation {worst:.2e}")
    assert worst < 1e-9


def test_12_analytic_sanity():
    for k in range(3, 8):
        ok, w = brun_titchmarsh_check(10**k)
        assert ok, w
    s = short_interval_survey(10**5, 2 * 10**5)
    print(f"\n[12] short-interval exceptions {s.exceptions}/{s.primes}")
    assert 1 - s.exception_fraction >= 0.90
    for curve in REG.values():
        report = run_census(curve, 10**5)
        bound = 12 * 1e5 / math.log(1e5) ** 2
        print(f"[12] {curve.label}: pi = {report.pi_count} <= {bound:.1f}")
        assert upper_bound_check(report)


def test_13_brun_values_reported_not_asserted():
    for entry in load_tables():
        curve = REG[entry["curve"]]
        report = run_census(curve, 1000, t=entry["t"], mode="prime")
        value = brun_partial_sum(report)
        print(f"\n[13] {curve.label} t={entry['t']}: partial sum to 1000 = {value:.10f}, printed {entry['brun_printed']}")
        assert value == pytest.approx(sum(1 / r.p for r in report.counted), rel=1e-15)
