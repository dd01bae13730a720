from fractions import Fraction

import numpy as np
import pytest

from ellcensus.curve import CurveQ
from ellcensus.density import (
    P0_REFERENCE,
    QUARTIC_TWIST_REFERENCE,
    delta_quartic_twist,
    delta_serre,
    elliptic_divisor_cm_table,
    elliptic_divisor_empirical,
    koblitz_constant,
    koblitz_factor,
    koblitz_tail_bound,
    quartic_factor,
    serre_correction,
)
from ellcensus.errors import DomainError, InsufficientDataError, InvalidDiscriminantError
from ellcensus.numtheory import sieve_primes


def test_koblitz_factor_at_two():
    assert koblitz_factor(Fraction(2)) == Fraction(2, 3)


def test_koblitz_factors_in_unit_interval():
    p = np.array(sieve_primes(100_000), dtype=np.float64)
    f = koblitz_factor(p)
    assert np.all((f > 0) & (f < 1))


def test_koblitz_bracket_at_1e6():
    b = koblitz_constant(10**6)
    assert P0_REFERENCE in b
    assert b.width < 1e-6
    assert b.lower <= b.value <= b.upper


def test_koblitz_upper_is_naive_partial_product():
    # independent accumulation: exact rationals over p < 2000, then a float loop
    exact = Fraction(1)
    for p in sieve_primes(2000):
        exact *= 1 - Fraction(p * p - p - 1, (p - 1) ** 3 * (p + 1))
    b = koblitz_constant(2000)
    assert b.upper == pytest.approx(float(exact), rel=1e-11)
    assert float(exact) <= b.upper


def test_koblitz_brackets_nest_and_shrink():
    brackets = [koblitz_constant(10**k) for k in (3, 4, 5, 6)]
    for coarse, fine in zip(brackets, brackets[1:]):
        assert coarse.lower <= fine.lower <= fine.upper <= coarse.upper
        assert fine.width < coarse.width
    assert brackets[0].upper >= brackets[1].upper >= brackets[2].upper


def test_tail_bound_dominates_actual_tail():
    # the tail beyond 10^3 measured up to 10^6 must sit below the bound
    p = np.array([q for q in sieve_primes(10**6) if q > 1000], dtype=np.float64)
    measured = -np.log(koblitz_factor(p)).sum()
    assert measured < koblitz_tail_bound(1000)


def test_koblitz_limit_guard():
    with pytest.raises(DomainError):
        koblitz_constant(50)


def test_serre_correction_exact():
    assert serre_correction(-3) == Fraction(10, 9)
    assert serre_correction(-4) == 1
    assert serre_correction(-8) == 1
    # D = -15: q = 3, 5 give 1/(9 * 73)
    assert serre_correction(-15) == 1 + Fraction(1, 9 * 73)
    with pytest.raises(InvalidDiscriminantError):
        serre_correction(-5)


def test_delta_serre_values():
    b = delta_serre(-3)
    assert abs(b.value - 0.5612957424882619) < 1e-6
    assert 0.5612957424882619 in b
    p0 = koblitz_constant(10**6)
    assert delta_serre(-4).lower <= p0.lower and delta_serre(-4).upper >= p0.upper
    with pytest.raises(InvalidDiscriminantError):
        delta_serre(0)


def test_quartic_factors():
    assert quartic_factor(np.float64(3)) == pytest.approx(1.3125)
    assert quartic_factor(np.float64(5)) == pytest.approx(1 - 19 / 64)


def test_quartic_twist_value():
    b = delta_quartic_twist(10**6)
    assert abs(b.value - QUARTIC_TWIST_REFERENCE) < 5e-3
    assert b.lower <= b.value <= b.upper
    with pytest.raises(DomainError):
        delta_quartic_twist(1000)


def test_empirical_divisor_small_bound(bachet, congruent, mordell_one):
    assert elliptic_divisor_empirical(congruent, 1000).d_E == 8
    assert elliptic_divisor_empirical(bachet, 1000).d_E == 1
    assert elliptic_divisor_empirical(mordell_one, 1000).d_E == 12


def test_empirical_divisor_divides_orders(congruent):
    from ellcensus.curve import reduce
    from ellcensus.numtheory import legendre
    from ellcensus.order import group_order

    est = elliptic_divisor_empirical(congruent, 2000)
    for p in sieve_primes(2000)[2:]:
        if congruent.is_good_prime(p) and legendre(-4, p) == 1:
            assert group_order(reduce(congruent, p)) % est.d_E == 0
    assert 24 % est.d_E == 0


def test_empirical_divisor_needs_split_primes():
    with pytest.raises(InsufficientDataError):
        elliptic_divisor_empirical(CurveQ("x", -1, 0, cm_discriminant=-4), 4)


def test_cm_table_examples():
    assert elliptic_divisor_cm_table(-4, -1, 0) == 8
    assert elliptic_divisor_cm_table(-3, 0, 2) == 1
    assert elliptic_divisor_cm_table(-19, -608, -5776) == 1
    assert elliptic_divisor_cm_table(-4, 3, 0) == 2
    assert elliptic_divisor_cm_table(-4, 4, 0) == 8
    assert elliptic_divisor_cm_table(-3, 0, 8) == 4
    assert elliptic_divisor_cm_table(-3, 0, 1) == 12
    assert elliptic_divisor_cm_table(-7, -140 * 4, -784 * 8) == 4
    assert elliptic_divisor_cm_table(-7, 1, 1) is None
    assert elliptic_divisor_cm_table(-23, -1, 0) is None


@pytest.mark.parametrize(
    "a,b,D",
    [(0, 8, -3), (0, -27 * 4, -3), (0, 4, -3), (2, 0, -4), (-4, 0, -4), (-16, 0, -4), (-140, -784, -7), (-30, -56, -8)],
)
def test_cm_table_agrees_with_empirical(a, b, D):
    curve = CurveQ("x", a, b, cm_discriminant=D)
    assert elliptic_divisor_empirical(curve, 3000).d_E == elliptic_divisor_cm_table(D, a, b)
