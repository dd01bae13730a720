import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellcensus.curve import CurveFp, CurveQ, add, discriminant, enumerate_points, reduce, scalar_mul
from ellcensus.errors import (
    BadReductionError,
    DomainError,
    InvalidPointError,
    OracleBoundError,
    SmallCharacteristicError,
)
from ellcensus.numtheory import sieve_primes
from oracles import brute_add, brute_points

SMALL_PRIMES = [p for p in sieve_primes(200) if p > 3]


def test_discriminant_examples():
    assert discriminant(0, 2) == -1728
    assert discriminant(-1, 0) == 64
    assert discriminant(0, 0) == 0
    assert discriminant(6, -2) == -16 * (4 * 216 + 27 * 4)


def test_singular_curve_rejected():
    with pytest.raises(DomainError):
        CurveQ("bad", 0, 0)


def test_generator_checked():
    with pytest.raises(InvalidPointError):
        CurveQ("bad", 0, 2, generator=(1, 1))


def test_reduce(bachet, congruent):
    E = reduce(bachet, 5)
    assert (E.p, E.a, E.b) == (5, 0, 2)
    with pytest.raises(BadReductionError):
        reduce(bachet, 3)
    with pytest.raises(SmallCharacteristicError):
        reduce(congruent, 2)
    with pytest.raises(BadReductionError):
        reduce(CurveQ("x", 1, 1), 31)  # 4 + 27 = 31


def test_group_law_examples():
    E = CurveFp(5, 0, 2)
    assert add(E, (3, 2), (3, 2)) == (3, 3)
    assert scalar_mul(E, 2, (3, 2)) == (3, 3)
    assert scalar_mul(E, 3, (3, 2)) is None
    assert scalar_mul(E, 0, (4, 1)) is None
    assert scalar_mul(E, 1, (4, 1)) == (4, 1)
    assert scalar_mul(E, -1, (4, 1)) == (4, 4)
    assert add(E, None, (4, 1)) == (4, 1)


def test_off_curve_rejected():
    E = CurveFp(5, 0, 2)
    with pytest.raises(InvalidPointError):
        add(E, (1, 1), (4, 1))
    with pytest.raises(InvalidPointError):
        scalar_mul(E, 2, (0, 0))


def test_enumerate_examples():
    pts = enumerate_points(CurveFp(5, 0, 2))
    assert set(pts) == {None, (2, 0), (3, 2), (3, 3), (4, 1), (4, 4)}
    pts = enumerate_points(CurveFp(5, -1, 0))
    assert {(0, 0), (1, 0), (4, 0)} <= set(pts)
    assert None in pts


def test_enumerate_refuses_large_p():
    with pytest.raises(OracleBoundError):
        enumerate_points(CurveFp(10007, 0, 2))


@pytest.mark.parametrize("p", SMALL_PRIMES[:20])
def test_enumerate_matches_brute(registry, p):
    for curve in registry.values():
        if curve.is_good_prime(p):
            assert sorted(enumerate_points(reduce(curve, p)), key=str) == sorted(brute_points(curve.a, curve.b, p), key=str)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_closure_inverse_against_oracle(registry, p):
    for curve in registry.values():
        if not curve.is_good_prime(p):
            continue
        E = reduce(curve, p)
        pts = enumerate_points(E)
        rng = random.Random(p)
        for _ in range(200):
            P, Q = rng.choice(pts), rng.choice(pts)
            R = add(E, P, Q)
            assert E.contains(R)
            assert R == brute_add(E.a, p, P, Q)
        for P in pts:
            assert add(E, P, E.neg(P)) is None


@pytest.mark.parametrize("p", [101, 199])
def test_associativity_sampled(registry, p):
    for curve in registry.values():
        E = reduce(curve, p)
        pts = enumerate_points(E)
        rng = random.Random(0)
        for _ in range(1000):
            P, Q, R = (rng.choice(pts) for _ in range(3))
            assert add(E, add(E, P, Q), R) == add(E, P, add(E, Q, R))


@given(st.integers(min_value=-500, max_value=500), st.integers(min_value=-500, max_value=500))
def test_scalar_mul_is_homomorphic(j, k):
    E = CurveFp(1009, 6, -2)
    P = E.lift_x(2) or next(iter(E.points()))
    assert add(E, scalar_mul(E, j, P), scalar_mul(E, k, P)) == scalar_mul(E, j + k, P)


def test_twist_order_relation():
    from ellcensus.numtheory import nonresidue
    from ellcensus.order import order_exhaustive

    for p in (101, 1009, 4099):
        E = CurveFp(p, 6, -2)
        assert order_exhaustive(E) + order_exhaustive(E.twist(nonresidue(p))) == 2 * p + 2
