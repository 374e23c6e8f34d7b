"""Cantor normal forms below omega^omega and their arithmetic."""

import pytest
from hypothesis import given, strategies as st

from filterlab.ordinals import (
    OMEGA,
    ONE,
    Ordinal,
    OrdinalError,
    ZERO,
    as_int,
    is_finite_ord,
    omega_pow,
    ord_add,
    ord_cmp,
    ord_le,
    ord_lt,
    ord_max,
    ord_min,
    ord_of_int,
    ord_str,
    ord_succ,
    parse_ordinal,
)

ordinals = st.builds(
    lambda terms: Ordinal(
        tuple(sorted({e: c for e, c in terms}.items(), reverse=True))
    ),
    st.lists(
        st.tuples(st.integers(min_value=0, max_value=5), st.integers(min_value=1, max_value=9)),
        max_size=3,
    ),
)


def test_constants():
    assert ord_str(ZERO) == "0"
    assert ord_str(ONE) == "1"
    assert ord_str(OMEGA) == "w"
    assert ord_of_int(0) == ZERO
    assert ord_of_int(1) == ONE


def test_ordinal_rejects_bad_normal_forms():
    with pytest.raises(OrdinalError):
        Ordinal(((1, 1), (2, 1)))  # exponents must strictly decrease
    with pytest.raises(OrdinalError):
        Ordinal(((1, 0),))  # zero coefficients are not stored
    with pytest.raises(OrdinalError):
        ord_of_int(-1)


def test_one_plus_omega_absorbs():
    assert ord_add(ONE, OMEGA) == OMEGA
    assert ord_add(OMEGA, ONE) != OMEGA
    assert ord_str(ord_add(OMEGA, ONE)) == "w+1"


def test_finite_head_absorption():
    # n + w^k = w^k for every positive exponent
    for n in range(5):
        for k in range(1, 4):
            assert ord_add(ord_of_int(n), omega_pow(k)) == omega_pow(k)


@given(ordinals, ordinals, ordinals)
def test_addition_associative(a, b, c):
    assert ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c))


@given(ordinals, ordinals)
def test_addition_right_monotone(a, b):
    assert ord_le(a, ord_add(a, b))
    if b != ZERO:
        assert ord_lt(a, ord_add(a, b))


@given(ordinals)
def test_zero_is_neutral(a):
    assert ord_add(a, ZERO) == a
    assert ord_add(ZERO, a) == a


@given(ordinals, ordinals)
def test_cmp_total_and_antisymmetric(a, b):
    c = ord_cmp(a, b)
    assert c in (-1, 0, 1)
    assert ord_cmp(b, a) == -c
    assert (c == 0) == (a == b)
    assert ord_max(a, b) == (a if c >= 0 else b)
    assert ord_min(a, b) == (b if c >= 0 else a)


@given(ordinals, ordinals, ordinals)
def test_le_transitive(a, b, c):
    if ord_le(a, b) and ord_le(b, c):
        assert ord_le(a, c)


@given(ordinals)
def test_succ_is_plus_one(a):
    assert ord_succ(a) == ord_add(a, ONE)
    assert ord_lt(a, ord_succ(a))


def test_finite_round_trip():
    for n in range(20):
        o = ord_of_int(n)
        assert is_finite_ord(o)
        assert as_int(o) == n
    assert not is_finite_ord(OMEGA)
    with pytest.raises(OrdinalError):
        as_int(OMEGA)


@given(ordinals)
def test_parse_inverts_str(a):
    assert parse_ordinal(ord_str(a)) == a


def test_parse_accepts_common_spellings():
    assert parse_ordinal("w^2") == omega_pow(2)
    assert parse_ordinal("w*3") == omega_pow(1, 3)
    assert parse_ordinal("w^2*2+w+4") == Ordinal(((2, 2), (1, 1), (0, 4)))
    assert parse_ordinal(" w + 1 ") == ord_add(OMEGA, ONE)


def test_parse_rejects_garbage():
    for bad in ["", "w^", "w^-1", "3+", "w**2", "omega", "w^2*"]:
        with pytest.raises(OrdinalError):
            parse_ordinal(bad)
    # a zero coefficient is a legal spelling of zero, not junk
    assert parse_ordinal("w^2*0") == ZERO
