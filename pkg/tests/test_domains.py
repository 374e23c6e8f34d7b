"""Domains, points, and the pairing-based enumerations."""

import pytest
from hypothesis import given, strategies as st

from filterlab.domains import (
    DSum,
    DomainError,
    NAT,
    NatPt,
    PairPt,
    Prod,
    SumPt,
    UNIT,
    UNIT_PT,
    cantor_pair,
    cantor_unpair,
    check_point,
    component,
    domain_depth,
    domain_is_finite,
    enum_point,
    index_of_tuple,
    is_indexed,
    is_linear_domain,
    make_point,
    point_from_key,
    point_in_domain,
    point_index,
    point_key,
    points_within,
    split_point,
    tuple_of_index,
)

DOMAINS = [NAT, Prod(NAT), Prod(Prod(UNIT)), DSum((Prod(UNIT),), NAT)]


@given(st.integers(min_value=0, max_value=10**9))
def test_cantor_unpair_inverts_pair_left(n):
    i, j = cantor_unpair(n)
    assert cantor_pair(i, j) == n


@given(st.integers(min_value=0, max_value=600), st.integers(min_value=0, max_value=600))
def test_cantor_pair_inverts_unpair_right(i, j):
    assert cantor_unpair(cantor_pair(i, j)) == (i, j)


def test_cantor_pair_is_monotone_on_diagonals():
    seen = set()
    for n in range(2000):
        p = cantor_unpair(n)
        assert p not in seen
        seen.add(p)


@given(st.integers(min_value=0, max_value=5000), st.integers(min_value=1, max_value=3))
def test_tuple_index_round_trip(idx, k):
    t = tuple_of_index(idx, k)
    assert len(t) == k
    assert index_of_tuple(t) == idx


def test_domain_depth_and_indexed():
    # depth counts indexed levels; leaves contribute nothing
    assert domain_depth(UNIT) == 0
    assert domain_depth(NAT) == 0
    assert domain_depth(Prod(NAT)) == 1
    assert domain_depth(Prod(Prod(UNIT))) == 2
    assert domain_depth(DSum((Prod(UNIT),), NAT)) == 2
    assert not is_indexed(NAT)
    assert not is_indexed(UNIT)
    assert is_indexed(Prod(NAT))
    assert is_indexed(DSum((), NAT))


def test_component_lookup():
    d = DSum((Prod(UNIT),), NAT)
    assert component(d, 0) == Prod(UNIT)
    assert component(d, 1) == NAT
    assert component(d, 10**6) == NAT
    assert component(Prod(NAT), 7) == NAT
    with pytest.raises(DomainError):
        component(NAT, 0)


def test_dsum_drops_trailing_tail_copies():
    assert DSum((NAT, NAT), NAT) == DSum((), NAT)
    assert DSum((Prod(UNIT), NAT), NAT) == DSum((Prod(UNIT),), NAT)
    assert DSum((NAT, Prod(UNIT)), NAT).exceptions == (NAT, Prod(UNIT))


def test_linear_and_finite_classification():
    assert is_linear_domain(NAT)
    assert is_linear_domain(Prod(UNIT))
    assert not is_linear_domain(Prod(NAT))
    assert domain_is_finite(UNIT)
    assert not domain_is_finite(NAT)


@pytest.mark.parametrize("d", DOMAINS)
def test_enum_point_is_a_bijection_prefix(d):
    seen = set()
    for n in range(300):
        p = enum_point(d, n)
        check_point(p, d)
        k = point_key(p)
        assert k not in seen
        seen.add(k)
        assert point_index(d, p) == n


@pytest.mark.parametrize("d", DOMAINS)
def test_point_key_round_trip(d):
    for n in range(100):
        p = enum_point(d, n)
        assert point_from_key(d, point_key(p)) == p


def test_split_and_make_point():
    p = make_point(Prod(NAT), 3, NatPt(5))
    assert p == PairPt(3, NatPt(5))
    assert split_point(p) == (3, NatPt(5))
    q = make_point(DSum((), NAT), 2, NatPt(0))
    assert q == SumPt(2, NatPt(0))


def test_point_in_domain_checks_component():
    d = DSum((Prod(UNIT),), NAT)
    assert point_in_domain(SumPt(0, PairPt(4, UNIT_PT)), d)
    assert point_in_domain(SumPt(1, NatPt(9)), d)
    assert not point_in_domain(SumPt(0, NatPt(9)), d)
    with pytest.raises(DomainError):
        check_point(NatPt(0), d)


@pytest.mark.parametrize("d", DOMAINS)
def test_points_within_matches_key_bound(d):
    pts = points_within(d, 6)
    keys = {point_key(p) for p in pts}
    assert len(keys) == len(pts)
    for p in pts:
        assert all(c < 6 for c in point_key(p))
    # no grid point is missing: every enumerated point under the bound shows up
    for n in range(2000):
        p = enum_point(d, n)
        if all(c < 6 for c in point_key(p)):
            assert point_key(p) in keys
