"""Eventually uniform subsets of structured domains, in normal form.

A set over Unit or Nat is a finite or cofinite leaf.  A set over an indexed
domain is a SectionFamily: finitely many exceptional sections plus one tail
section repeated at every other index.  This shape is closed under the
boolean operations and keeps every query in this module exact.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from random import Random
from typing import Callable, Iterable, Mapping

from .domains import (
    DSum,
    DomainError,
    DomainExpr,
    FilterLabError,
    Nat,
    NatPt,
    Point,
    Prod,
    UNIT_PT,
    Unit,
    UnitPt,
    check_point,
    component,
    domain_depth,
    is_indexed,
    make_point,
    point_key,
    points_within,
    split_point,
)


class NotNormalForm(FilterLabError):
    """A SetExpr violates the eventually-uniform normal form."""


class SetExpr:
    __slots__ = ()


@dataclass(frozen=True)
class FinSet(SetExpr):
    """Finite leaf; elements sorted by canonical point order."""

    elements: tuple[Point, ...]
    domain: DomainExpr


@dataclass(frozen=True)
class CofinSet(SetExpr):
    """Cofinite leaf over Nat; excluded points sorted."""

    excluded: tuple[Point, ...]
    domain: DomainExpr


@dataclass(frozen=True)
class SectionFamily(SetExpr):
    """Sectionwise set over an indexed domain.

    exceptions maps finitely many indices to their sections; every other
    index carries the tail section.
    """

    exceptions: tuple[tuple[int, SetExpr], ...]
    tail: SetExpr
    domain: DomainExpr


@dataclass(frozen=True)
class ProgrammaticSet:
    """Escape hatch for sets with no eventually-uniform normal form.

    Queries against it are honest only up to truncation_bound; callers that
    know an exact finite/cofinite/neither classification over Nat may
    register it in frechet_class.
    """

    predicate: Callable[[Point], bool]
    truncation_bound: int
    domain: DomainExpr
    frechet_class: str | None = None  # "finite" | "cofinite" | "neither"
    label: str = ""


# ---------------------------------------------------------------------------
# constructors


def _sorted_points(points: Iterable[Point], domain: DomainExpr) -> tuple[Point, ...]:
    seen = {}
    for p in points:
        check_point(p, domain)
        seen[point_key(p)] = p
    return tuple(seen[k] for k in sorted(seen))


def fin_set(points: Iterable[Point], domain: DomainExpr) -> SetExpr:
    if is_indexed(domain):
        return finite_set_expr(points, domain)
    return FinSet(_sorted_points(points, domain), domain)


def cofin_set(excluded: Iterable[Point], domain: DomainExpr) -> SetExpr:
    if isinstance(domain, Unit):
        # over the one-point domain everything canonicalizes to FinSet
        pts = _sorted_points(excluded, domain)
        return FinSet(() if pts else (UNIT_PT,), domain)
    if isinstance(domain, Nat):
        return CofinSet(_sorted_points(excluded, domain), domain)
    return cofinite_set_expr(excluded, domain)


def section_family(
    exceptions: Mapping[int, SetExpr], tail: SetExpr, domain: DomainExpr
) -> SetExpr:
    if not is_indexed(domain):
        raise NotNormalForm(f"SectionFamily needs an indexed domain, got {domain!r}")
    kept: list[tuple[int, SetExpr]] = []
    for i in sorted(exceptions):
        if i < 0:
            raise NotNormalForm("exception keys must be naturals")
        sec = exceptions[i]
        if sec == tail:
            continue  # equal SetExprs share a domain, so pruning is safe
        kept.append((i, sec))
    fam = SectionFamily(tuple(kept), tail, domain)
    validate_set(fam, domain)
    return fam


def empty_set(domain: DomainExpr) -> SetExpr:
    if not is_indexed(domain):
        return fin_set((), domain)
    excs = {}
    if isinstance(domain, DSum):
        excs = {i: empty_set(e) for i, e in enumerate(domain.exceptions)}
    tail = empty_set(component(domain, _tail_index(domain)))
    return section_family(excs, tail, domain)


def full_set(domain: DomainExpr) -> SetExpr:
    if isinstance(domain, Unit):
        return fin_set((UNIT_PT,), domain)
    if isinstance(domain, Nat):
        return cofin_set((), domain)
    excs = {}
    if isinstance(domain, DSum):
        excs = {i: full_set(e) for i, e in enumerate(domain.exceptions)}
    tail = full_set(component(domain, _tail_index(domain)))
    return section_family(excs, tail, domain)


def _tail_index(domain: DomainExpr) -> int:
    return len(domain.exceptions) if isinstance(domain, DSum) else 0


def finite_set_expr(points: Iterable[Point], domain: DomainExpr) -> SetExpr:
    """Normal form of an explicit finite point set over any domain."""
    if not is_indexed(domain):
        return FinSet(_sorted_points(points, domain), domain)
    groups: dict[int, list[Point]] = {}
    for p in points:
        check_point(p, domain)
        i, rest = split_point(p)
        groups.setdefault(i, []).append(rest)
    excs = {i: finite_set_expr(rests, component(domain, i)) for i, rests in groups.items()}
    if isinstance(domain, DSum):
        for i in range(len(domain.exceptions)):
            excs.setdefault(i, empty_set(component(domain, i)))
    tail = empty_set(component(domain, _tail_index(domain)))
    return section_family(excs, tail, domain)


def cofinite_set_expr(excluded: Iterable[Point], domain: DomainExpr) -> SetExpr:
    return set_complement(finite_set_expr(excluded, domain))


def co_singleton(p: Point, domain: DomainExpr) -> SetExpr:
    return cofinite_set_expr([p], domain)


# ---------------------------------------------------------------------------
# validation


def validate_set(a: SetExpr, domain: DomainExpr | None = None) -> None:
    """Raise NotNormalForm unless a is a well-formed normal form."""
    if domain is None:
        domain = a.domain
    if a.domain != domain:
        raise NotNormalForm(f"domain mismatch: {a.domain!r} vs {domain!r}")
    if isinstance(a, FinSet):
        if is_indexed(domain):
            raise NotNormalForm("FinSet over an indexed domain")
        _check_sorted(a.elements, domain)
        return
    if isinstance(a, CofinSet):
        if not isinstance(domain, Nat):
            raise NotNormalForm("CofinSet is only normal over Nat")
        _check_sorted(a.excluded, domain)
        return
    if isinstance(a, SectionFamily):
        if not is_indexed(domain):
            raise NotNormalForm("SectionFamily over a leaf domain")
        keys = [i for i, _ in a.exceptions]
        if keys != sorted(set(keys)) or any(i < 0 for i in keys):
            raise NotNormalForm("exception keys must be sorted distinct naturals")
        for i, sec in a.exceptions:
            validate_set(sec, component(domain, i))
            if sec == a.tail:
                raise NotNormalForm(f"exception {i} duplicates the tail")
        validate_set(a.tail, component(domain, _tail_index(domain)))
        if isinstance(domain, DSum):
            covered = dict(a.exceptions)
            for i, e in enumerate(domain.exceptions):
                if i not in covered and e != component(domain, _tail_index(domain)):
                    raise NotNormalForm(
                        f"index {i} has component {e!r} but would fall to the tail"
                    )
        return
    raise NotNormalForm(f"not a SetExpr: {a!r}")


def _check_sorted(points: tuple[Point, ...], domain: DomainExpr) -> None:
    keys = [point_key(p) for p in points]
    if keys != sorted(set(keys)):
        raise NotNormalForm("leaf points must be sorted and distinct")
    for p in points:
        check_point(p, domain)


# ---------------------------------------------------------------------------
# queries


def section(a: SetExpr, i: int) -> SetExpr:
    """The i-th section of a sectionwise set."""
    if not isinstance(a, SectionFamily):
        raise DomainError(f"section() needs a SectionFamily, got {type(a).__name__}")
    keys = [k for k, _ in a.exceptions]
    pos = bisect_left(keys, i)
    if pos < len(keys) and keys[pos] == i:
        return a.exceptions[pos][1]
    return a.tail


def exception_keys(a: SetExpr) -> tuple[int, ...]:
    if isinstance(a, SectionFamily):
        return tuple(i for i, _ in a.exceptions)
    return ()


def set_member(p: Point, a: SetExpr) -> bool:
    if isinstance(a, FinSet):
        return point_key(p) in {point_key(q) for q in a.elements}
    if isinstance(a, CofinSet):
        return point_key(p) not in {point_key(q) for q in a.excluded}
    if isinstance(a, SectionFamily):
        i, rest = split_point(p)
        return set_member(rest, section(a, i))
    raise DomainError(f"not a SetExpr: {a!r}")


def set_complement(a: SetExpr) -> SetExpr:
    if isinstance(a, FinSet):
        return cofin_set(a.elements, a.domain)
    if isinstance(a, CofinSet):
        return fin_set(a.excluded, a.domain)
    if isinstance(a, SectionFamily):
        excs = {i: set_complement(sec) for i, sec in a.exceptions}
        return section_family(excs, set_complement(a.tail), a.domain)
    raise DomainError(f"not a SetExpr: {a!r}")


def _leaf_binop(a: SetExpr, b: SetExpr, op: str) -> SetExpr:
    ka = {point_key(p): p for p in (a.elements if isinstance(a, FinSet) else a.excluded)}
    kb = {point_key(p): p for p in (b.elements if isinstance(b, FinSet) else b.excluded)}
    fin_a, fin_b = isinstance(a, FinSet), isinstance(b, FinSet)
    d = a.domain
    if op == "union":
        if fin_a and fin_b:
            return fin_set(list(ka.values()) + list(kb.values()), d)
        if fin_a:  # Fin u Cofin: drop a's points from b's exclusions
            return cofin_set([kb[k] for k in kb if k not in ka], d)
        if fin_b:
            return cofin_set([ka[k] for k in ka if k not in kb], d)
        return cofin_set([ka[k] for k in ka if k in kb], d)
    if op == "intersect":
        if fin_a and fin_b:
            return fin_set([ka[k] for k in ka if k in kb], d)
        if fin_a:
            return fin_set([ka[k] for k in ka if k not in kb], d)
        if fin_b:
            return fin_set([kb[k] for k in kb if k not in ka], d)
        return cofin_set(list(ka.values()) + list(kb.values()), d)
    raise AssertionError(op)


def _binop(a: SetExpr, b: SetExpr, op: str) -> SetExpr:
    if a.domain != b.domain:
        raise DomainError(f"cross-domain {op}: {a.domain!r} vs {b.domain!r}")
    if isinstance(a, SectionFamily) != isinstance(b, SectionFamily):
        raise NotNormalForm("mixed leaf/sectionwise operands over one domain")
    if not isinstance(a, SectionFamily):
        return _leaf_binop(a, b, op)
    keys = sorted(set(exception_keys(a)) | set(exception_keys(b)))
    excs = {i: _binop(section(a, i), section(b, i), op) for i in keys}
    return section_family(excs, _binop(a.tail, b.tail, op), a.domain)


def set_union(a: SetExpr, b: SetExpr) -> SetExpr:
    return _binop(a, b, "union")


def set_intersect(a: SetExpr, b: SetExpr) -> SetExpr:
    return _binop(a, b, "intersect")


@dataclass(frozen=True)
class Finite:
    count: int


@dataclass(frozen=True)
class Cofinite:
    gap_count: int


def classify_nat(a: SetExpr) -> Finite | Cofinite:
    """Exact finite/cofinite verdict for a leaf set over Nat or Unit."""
    if isinstance(a, FinSet):
        return Finite(len(a.elements))
    if isinstance(a, CofinSet):
        return Cofinite(len(a.excluded))
    raise DomainError("classify_nat expects a leaf set")


def finite_points(a: SetExpr) -> tuple[Point, ...] | None:
    """All points of a if a is finite, else None."""
    if isinstance(a, FinSet):
        return a.elements
    if isinstance(a, CofinSet):
        return None
    if isinstance(a, SectionFamily):
        if finite_points(a.tail) != ():
            return None
        out: list[Point] = []
        for i, sec in a.exceptions:
            pts = finite_points(sec)
            if pts is None:
                return None
            out.extend(make_point(a.domain, i, r) for r in pts)
        return tuple(sorted(out, key=point_key))
    raise DomainError(f"not a SetExpr: {a!r}")


def cofinite_excluded(a: SetExpr) -> tuple[Point, ...] | None:
    """The finite complement of a if there is one, else None."""
    if isinstance(a, FinSet):
        if isinstance(a.domain, Unit):
            return () if a.elements else (UNIT_PT,)
        return None
    if isinstance(a, CofinSet):
        return a.excluded
    if isinstance(a, SectionFamily):
        if cofinite_excluded(a.tail) != ():
            return None
        out: list[Point] = []
        for i, sec in a.exceptions:
            gaps = cofinite_excluded(sec)
            if gaps is None:
                return None
            out.extend(make_point(a.domain, i, r) for r in gaps)
        return tuple(sorted(out, key=point_key))
    raise DomainError(f"not a SetExpr: {a!r}")


def is_empty_set(a: SetExpr) -> bool:
    return finite_points(a) == ()


def is_full_set(a: SetExpr) -> bool:
    return cofinite_excluded(a) == ()


def first_point(a: SetExpr) -> Point | None:
    """Least member in canonical order, or None for the empty set."""
    if isinstance(a, FinSet):
        return a.elements[0] if a.elements else None
    if isinstance(a, CofinSet):
        gaps = {point_key(p)[0] for p in a.excluded}
        n = 0
        while n in gaps:
            n += 1
        return NatPt(n)
    if isinstance(a, SectionFamily):
        span = max((i for i, _ in a.exceptions), default=-1) + 1
        for i in range(span + 1):
            p = first_point(section(a, i))
            if p is not None:
                return make_point(a.domain, i, p)
        return None
    raise DomainError(f"not a SetExpr: {a!r}")


def subset_check(a: SetExpr, b: SetExpr) -> bool:
    return is_empty_set(set_intersect(a, set_complement(b)))


def truncate(a: SetExpr | ProgrammaticSet, bound: int) -> list[Point]:
    """Members of a with all coordinates < bound, canonically ordered."""
    if isinstance(a, ProgrammaticSet):
        return [p for p in points_within(a.domain, bound) if a.predicate(p)]
    if isinstance(a, FinSet):
        return [p for p in a.elements if all(c < bound for c in point_key(p))]
    if isinstance(a, CofinSet):
        cut = {point_key(q)[0] for q in a.excluded}
        return [NatPt(n) for n in range(bound) if n not in cut]
    if isinstance(a, SectionFamily):
        out = []
        for i in range(bound):
            out += [make_point(a.domain, i, q) for q in truncate(section(a, i), bound)]
        return out
    raise DomainError(f"not a SetExpr: {a!r}")


def set_span(a: SetExpr) -> int:
    """One past the largest index mentioned anywhere in a."""
    if isinstance(a, FinSet):
        return max((point_key(p)[0] + 1 for p in a.elements if point_key(p)), default=0)
    if isinstance(a, CofinSet):
        return max((point_key(p)[0] + 1 for p in a.excluded), default=0)
    if isinstance(a, SectionFamily):
        return max((i + 1 for i, _ in a.exceptions), default=0)
    raise DomainError(f"not a SetExpr: {a!r}")


# ---------------------------------------------------------------------------
# random generation


def gen_random_setexpr(domain: DomainExpr, depth_budget: int, seed: int) -> SetExpr:
    """Deterministic random normal form over the given domain."""
    if depth_budget < domain_depth(domain):
        raise DomainError("depth_budget smaller than the domain depth")
    rng = Random(seed)
    return _gen(domain, rng)


def _gen(domain: DomainExpr, rng: Random) -> SetExpr:
    if isinstance(domain, Unit):
        return fin_set((UNIT_PT,) if rng.random() < 0.5 else (), domain)
    if isinstance(domain, Nat):
        pts = [NatPt(rng.randrange(12)) for _ in range(rng.randrange(5))]
        if rng.random() < 0.5:
            return fin_set(pts, domain)
        return cofin_set(pts, domain)
    n_exc = rng.randrange(4)
    keys = sorted(rng.sample(range(8), n_exc)) if n_exc else []
    excs = {i: _gen(component(domain, i), rng) for i in keys}
    if isinstance(domain, DSum):
        for i in range(len(domain.exceptions)):
            excs.setdefault(i, _gen(component(domain, i), rng))
    tail = _gen(component(domain, _tail_index(domain)), rng)
    return section_family(excs, tail, domain)
