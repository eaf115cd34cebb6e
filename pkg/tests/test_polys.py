"""Sparse univariate polynomial helpers."""

from hypothesis import given, strategies as st

from newton_monodromy.polys import (
    padd,
    pcoeff,
    pdegree,
    peval_one,
    pmin_degree,
    pmul,
    pscale,
    pshift,
    pstr,
    one_minus_t_power,
    t2m1_power,
)

poly_st = st.dictionaries(st.integers(-5, 8),
                          st.integers(-9, 9).filter(bool), max_size=6)


def test_basic_arithmetic():
    p = {0: 1, 2: -3}
    q = {1: 2, 2: 3}
    assert padd(p, q) == {0: 1, 1: 2}
    assert pmul(p, q) == {1: 2, 2: 3, 3: -6, 4: -9}
    assert pscale(2, p) == {0: 2, 2: -6}
    assert pshift(p, -2) == {-2: 1, 0: -3}
    assert pdegree(p) == 2 and pmin_degree(p) == 0
    assert pcoeff(p, 2) == -3 and pcoeff(p, 5) == 0


def test_power_expansions():
    assert t2m1_power(0) == {0: 1}
    assert t2m1_power(2) == {0: 1, 2: -2, 4: 1}
    assert one_minus_t_power(3) == {0: 1, 1: -3, 2: 3, 3: -1}
    assert peval_one(t2m1_power(4)) == 0
    assert peval_one(one_minus_t_power(2)) == 0


def test_pstr():
    assert pstr({}) == "0"
    assert pstr({0: -1, 1: 1, 3: -2}) == "-1 + t - 2*t^3"


@given(poly_st, poly_st, poly_st)
def test_ring_axioms(p, q, r):
    assert padd(p, q) == padd(q, p)
    assert pmul(p, q) == pmul(q, p)
    assert pmul(p, padd(q, r)) == padd(pmul(p, q), pmul(p, r))
    assert peval_one(pmul(p, q)) == peval_one(p) * peval_one(q)


@given(poly_st, st.integers(-4, 4))
def test_shift_is_monomial_multiplication(p, k):
    assert pshift(p, k) == pmul(p, {k: 1})
