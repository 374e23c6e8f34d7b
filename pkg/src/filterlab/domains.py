"""Structured countable index sets and their points.

A domain is a finite tower built from the one-point set and the naturals:
``Prod(d)`` is ``omega x d`` and ``DSum(excs, tail)`` is the disjoint sum
``Sigma_i d_i`` whose first ``len(excs)`` components may differ from the
uniform tail component.  Points mirror the tower shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

DEFAULT_MAX_DEPTH = 8


class FilterLabError(Exception):
    """Base class for errors raised by this package."""


class DomainError(FilterLabError):
    """Malformed domain/point shapes or cross-domain mixups."""


class EnumerationUnsupported(FilterLabError):
    """The domain has no implemented canonical enumeration."""


# ---------------------------------------------------------------------------
# domains


class DomainExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Unit(DomainExpr):
    """The one-point domain."""


@dataclass(frozen=True)
class Nat(DomainExpr):
    """The naturals."""


@dataclass(frozen=True)
class Prod(DomainExpr):
    """omega x inner."""

    inner: DomainExpr


@dataclass(frozen=True)
class DSum(DomainExpr):
    """Disjoint sum over omega: exceptional components, then a uniform tail.

    Trailing exceptional components equal to the tail are dropped, so each
    sum of domains has exactly one representation.
    """

    exceptions: tuple[DomainExpr, ...]
    tail: DomainExpr

    def __post_init__(self) -> None:
        excs = list(self.exceptions)
        while excs and excs[-1] == self.tail:
            excs.pop()
        if len(excs) != len(self.exceptions):
            object.__setattr__(self, "exceptions", tuple(excs))


UNIT = Unit()
NAT = Nat()


def is_indexed(d: DomainExpr) -> bool:
    """True for domains whose points split into (index, rest)."""
    return isinstance(d, (Prod, DSum))


def component(d: DomainExpr, i: int) -> DomainExpr:
    """Inner domain sitting under index i."""
    if isinstance(d, Prod):
        return d.inner
    if isinstance(d, DSum):
        return d.exceptions[i] if i < len(d.exceptions) else d.tail
    raise DomainError(f"domain {d!r} has no components")


def domain_depth(d: DomainExpr) -> int:
    if isinstance(d, (Unit, Nat)):
        return 0
    if isinstance(d, Prod):
        return 1 + domain_depth(d.inner)
    if isinstance(d, DSum):
        inner = [domain_depth(e) for e in d.exceptions] + [domain_depth(d.tail)]
        return 1 + max(inner)
    raise DomainError(f"not a domain: {d!r}")


def domain_is_finite(d: DomainExpr) -> bool:
    # Unit is the only finite shape; Prod/DSum are indexed by all of omega.
    return isinstance(d, Unit)


# ---------------------------------------------------------------------------
# points


class Point:
    __slots__ = ()


@dataclass(frozen=True)
class UnitPt(Point):
    pass


@dataclass(frozen=True)
class NatPt(Point):
    n: int


@dataclass(frozen=True)
class PairPt(Point):
    i: int
    rest: Point


@dataclass(frozen=True)
class SumPt(Point):
    i: int
    rest: Point


UNIT_PT = UnitPt()


def point_key(p: Point) -> tuple[int, ...]:
    """Coordinate tuple used for the canonical (lexicographic) order."""
    if isinstance(p, UnitPt):
        return ()
    if isinstance(p, NatPt):
        return (p.n,)
    if isinstance(p, (PairPt, SumPt)):
        return (p.i,) + point_key(p.rest)
    raise DomainError(f"not a point: {p!r}")


def split_point(p: Point) -> tuple[int, Point]:
    if isinstance(p, (PairPt, SumPt)):
        return p.i, p.rest
    raise DomainError(f"point {p!r} has no head index")


def make_point(d: DomainExpr, i: int, rest: Point) -> Point:
    if isinstance(d, Prod):
        return PairPt(i, rest)
    if isinstance(d, DSum):
        return SumPt(i, rest)
    raise DomainError(f"domain {d!r} is not indexed")


def point_in_domain(p: Point, d: DomainExpr) -> bool:
    if isinstance(d, Unit):
        return isinstance(p, UnitPt)
    if isinstance(d, Nat):
        return isinstance(p, NatPt) and p.n >= 0
    if isinstance(d, Prod):
        return isinstance(p, PairPt) and p.i >= 0 and point_in_domain(p.rest, d.inner)
    if isinstance(d, DSum):
        return (
            isinstance(p, SumPt)
            and p.i >= 0
            and point_in_domain(p.rest, component(d, p.i))
        )
    raise DomainError(f"not a domain: {d!r}")


def check_point(p: Point, d: DomainExpr) -> None:
    if not point_in_domain(p, d):
        raise DomainError(f"point {p!r} does not belong to domain {d!r}")


def point_from_key(d: DomainExpr, key: tuple[int, ...]) -> Point:
    """Inverse of point_key for a given domain."""
    if isinstance(d, Unit):
        if key != ():
            raise DomainError(f"bad coordinates {key} for Unit")
        return UNIT_PT
    if isinstance(d, Nat):
        if len(key) != 1:
            raise DomainError(f"bad coordinates {key} for Nat")
        return NatPt(key[0])
    if isinstance(d, (Prod, DSum)):
        if not key:
            raise DomainError(f"bad coordinates {key} for {d!r}")
        i = key[0]
        return make_point(d, i, point_from_key(component(d, i), key[1:]))
    raise DomainError(f"not a domain: {d!r}")


def fresh_point(d: DomainExpr, m: int) -> Point:
    """A point all of whose coordinates sit at index m (beyond any span)."""
    if isinstance(d, Unit):
        return UNIT_PT
    if isinstance(d, Nat):
        return NatPt(m)
    if isinstance(d, Prod):
        return PairPt(m, fresh_point(d.inner, m))
    if isinstance(d, DSum):
        i = max(m, len(d.exceptions))
        return SumPt(i, fresh_point(d.tail, m))
    raise DomainError(f"not a domain: {d!r}")


# ---------------------------------------------------------------------------
# pairing and canonical enumeration


def cantor_pair(i: int, j: int) -> int:
    s = i + j
    return s * (s + 1) // 2 + j


def cantor_unpair(n: int) -> tuple[int, int]:
    s = (isqrt(8 * n + 1) - 1) // 2
    j = n - s * (s + 1) // 2
    return s - j, j


def tuple_of_index(idx: int, k: int) -> tuple[int, ...]:
    """The idx-th tuple in the canonical enumeration of omega^k."""
    if k <= 0:
        raise DomainError("tuple arity must be positive")
    if k == 1:
        return (idx,)
    a, b = cantor_unpair(idx)
    return (a,) + tuple_of_index(b, k - 1)


def index_of_tuple(t: tuple[int, ...]) -> int:
    if len(t) == 1:
        return t[0]
    return cantor_pair(t[0], index_of_tuple(t[1:]))


def _all_components_unit(d: DomainExpr) -> bool:
    if isinstance(d, Prod):
        return isinstance(d.inner, Unit)
    if isinstance(d, DSum):
        return isinstance(d.tail, Unit) and all(
            isinstance(e, Unit) for e in d.exceptions
        )
    return False


def is_linear_domain(d: DomainExpr) -> bool:
    """Domains in canonical bijection with omega, one point per index."""
    return isinstance(d, Nat) or _all_components_unit(d)


def _components_all_infinite(d: DomainExpr) -> bool:
    if isinstance(d, Prod):
        return not domain_is_finite(d.inner)
    if isinstance(d, DSum):
        return not domain_is_finite(d.tail) and all(
            not domain_is_finite(e) for e in d.exceptions
        )
    return False


def enum_point(d: DomainExpr, n: int) -> Point:
    """The n-th point of d in the canonical enumeration."""
    if n < 0:
        raise DomainError("enumeration index must be a natural")
    if isinstance(d, Nat):
        return NatPt(n)
    if isinstance(d, Unit):
        if n != 0:
            raise DomainError("Unit has a single point")
        return UNIT_PT
    if is_indexed(d):
        if _all_components_unit(d):
            return make_point(d, n, UNIT_PT)
        if _components_all_infinite(d):
            i, m = cantor_unpair(n)
            return make_point(d, i, enum_point(component(d, i), m))
        raise EnumerationUnsupported(
            f"no canonical enumeration for mixed-size components: {d!r}"
        )
    raise DomainError(f"not a domain: {d!r}")


def point_index(d: DomainExpr, p: Point) -> int:
    """Inverse of enum_point."""
    check_point(p, d)
    if isinstance(d, Nat):
        assert isinstance(p, NatPt)
        return p.n
    if isinstance(d, Unit):
        return 0
    if is_indexed(d):
        i, rest = split_point(p)
        if _all_components_unit(d):
            return i
        if _components_all_infinite(d):
            return cantor_pair(i, point_index(component(d, i), rest))
        raise EnumerationUnsupported(
            f"no canonical enumeration for mixed-size components: {d!r}"
        )
    raise DomainError(f"not a domain: {d!r}")


def points_within(d: DomainExpr, bound: int) -> list[Point]:
    """All points whose every coordinate is < bound, in canonical order.

    Unit contributes its point at every bound (no coordinates to restrict).
    """
    if isinstance(d, Unit):
        return [UNIT_PT]
    if isinstance(d, Nat):
        return [NatPt(n) for n in range(bound)]
    if is_indexed(d):
        out: list[Point] = []
        for i in range(bound):
            for rest in points_within(component(d, i), bound):
                out.append(make_point(d, i, rest))
        return out
    raise DomainError(f"not a domain: {d!r}")
