import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from perfcodes.exactmath import (binom, digit_sum, divides_binom, factorize, falling, format_rational, is_prime,
                                 is_square, is_squarefree, parse_exact_number, parse_int, stirling2,
                                 stirling2_explicit, vp, vp_binom, vp_factorial)


def test_binom_basics():
    assert binom(7, 3) == 35
    assert binom(5, 7) == 0
    assert binom(5, -1) == 0
    # polynomial extension for negative n
    assert binom(-1, 3) == -1
    assert binom(-3, 2) == 6


@given(st.integers(0, 60), st.integers(0, 60))
def test_pascal(n, k):
    assert binom(n + 1, k + 1) == binom(n, k) + binom(n, k + 1)


def test_falling():
    assert falling(5, 3) == 60
    assert falling(Fraction(1, 2), 2) == Fraction(-1, 4)
    assert falling(3, 0) == 1


@given(st.integers(0, 25), st.integers(0, 25))
def test_stirling_recursive_matches_explicit(r, v):
    assert stirling2(r, v) == stirling2_explicit(r, v)


def test_stirling_values():
    assert stirling2(5, 2) == 15
    assert stirling2(0, 0) == 1
    assert stirling2(4, 0) == 0
    assert stirling2(300, 2) == 2**299 - 1


def test_is_square():
    assert is_square(49) == 7
    assert is_square(50) is None
    assert is_square(-4) is None
    assert is_square(10**40) == 10**20


def test_factorize_small_and_large():
    assert factorize(50) == {2: 1, 5: 2}
    assert factorize(1) == {}
    p, q = 1000003, 1000033
    assert factorize(p * q) == {p: 1, q: 1}
    big = (2**61 - 1) * (2**31 - 1)
    assert factorize(big) == {2**31 - 1: 1, 2**61 - 1: 1}
    with pytest.raises(ValueError):
        factorize(0)


@settings(max_examples=200)
@given(st.integers(1, 10**12))
def test_factorize_product(x):
    f = factorize(x)
    assert math.prod(p**e for p, e in f.items()) == x
    assert all(is_prime(p) for p in f)


def test_is_prime_range():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**89 - 1) is None or is_prime(2**89 - 1)


def test_squarefree():
    assert is_squarefree(30)
    assert not is_squarefree(50)
    assert is_squarefree(1)


@given(st.integers(0, 2000), st.integers(0, 2000), st.sampled_from([2, 3, 5, 7, 11]))
def test_kummer_matches_direct(n, k, p):
    if k > n:
        n, k = k, n
    assert vp_binom(n, k, p) == vp(math.comb(n, k), p)


@given(st.integers(0, 500), st.sampled_from([2, 3, 5, 7]))
def test_legendre(n, p):
    assert vp_factorial(n, p) == vp(math.factorial(n), p)


def test_digit_sum():
    assert digit_sum(10, 2) == 2
    assert digit_sum(0, 3) == 0


@given(st.integers(1, 5000), st.integers(0, 300), st.integers(0, 300))
def test_divides_binom_agrees_with_modulo(m, n, k):
    if k > n:
        n, k = k, n
    ok, wit = divides_binom(m, n, k)
    assert ok == (math.comb(n, k) % m == 0)
    if not ok:
        p, e, v = wit
        assert v < e and m % p**e == 0


def test_divides_binom_example():
    ok, wit = divides_binom(50, 14, 7)
    # 3432 = 2^3 * 3 * 11 * 13 has no factor 5
    assert not ok and wit == (5, 2, 0)


def test_parse_and_format():
    assert parse_int("−12") == -12
    assert parse_int(" 42 ") == 42
    with pytest.raises(ValueError):
        parse_int("1e3")
    assert parse_exact_number("2.5e15") == 2500000000000000
    assert parse_exact_number("2.5*10^15") == 2500000000000000
    with pytest.raises(ValueError):
        parse_exact_number("2.55e0")
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"
