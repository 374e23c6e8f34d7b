"""Symbolic filters with an exact membership oracle.

A FilterExpr denotes a filter on a structured countable domain.  Membership
of a normal-form set is decided by structural recursion: sectionwise
constructors reduce a query to finitely many component verdicts plus one
tail verdict, which assemble into a finite or cofinite index set handed to
the base filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, Mapping, Union

from .domains import (
    DSum,
    DomainError,
    DomainExpr,
    FilterLabError,
    NAT,
    NatPt,
    Point,
    Prod,
    UNIT,
    UNIT_PT,
    Unit,
    check_point,
    component,
    enum_point,
    is_indexed,
    make_point,
    point_index,
    point_key,
)
from .sets import (
    CofinSet,
    FinSet,
    SectionFamily,
    SetExpr,
    co_singleton,
    cofin_set,
    cofinite_excluded,
    empty_set,
    exception_keys,
    fin_set,
    finite_points,
    finite_set_expr,
    full_set,
    gen_random_setexpr,
    is_empty_set,
    section,
    section_family,
    set_complement,
    set_intersect,
    set_member,
    set_union,
    subset_check,
    validate_set,
)


class UnsupportedPreimage(FilterLabError):
    """A pushforward query left the decidable set language."""


class FilterError(FilterLabError):
    """A filter expression is malformed."""


# ---------------------------------------------------------------------------
# bijections (total, both directions)


@dataclass(frozen=True)
class IdentityBij:
    domain: DomainExpr

    def source_domain(self) -> DomainExpr:
        return self.domain

    def target_domain(self) -> DomainExpr:
        return self.domain

    def apply(self, p: Point) -> Point:
        return p

    def unapply(self, q: Point) -> Point:
        return q

    def image_set(self, a: SetExpr) -> SetExpr:
        return a

    def preimage_set(self, a: SetExpr) -> SetExpr:
        return a


@dataclass(frozen=True)
class CanonicalEnum:
    """The fixed pairing-function bijection from the naturals onto target."""

    target: DomainExpr

    def source_domain(self) -> DomainExpr:
        return NAT

    def target_domain(self) -> DomainExpr:
        return self.target

    def apply(self, p: Point) -> Point:
        if not isinstance(p, NatPt):
            raise DomainError("CanonicalEnum is defined on naturals")
        return enum_point(self.target, p.n)

    def unapply(self, q: Point) -> Point:
        return NatPt(point_index(self.target, q))

    def image_set(self, a: SetExpr) -> SetExpr:
        if isinstance(a, FinSet):
            return finite_set_expr([self.apply(p) for p in a.elements], self.target)
        if isinstance(a, CofinSet):
            images = [self.apply(p) for p in a.excluded]
            return set_complement(finite_set_expr(images, self.target))
        raise UnsupportedPreimage("image of a non-leaf set under an enumeration")

    def preimage_set(self, a: SetExpr) -> SetExpr:
        pts = finite_points(a)
        if pts is not None:
            return fin_set([self.unapply(q) for q in pts], NAT)
        gaps = cofinite_excluded(a)
        if gaps is not None:
            return cofin_set([self.unapply(q) for q in gaps], NAT)
        return _raise_preimage(a)


def _raise_preimage(a: SetExpr) -> SetExpr:
    raise UnsupportedPreimage(
        "preimage under an enumeration is only a normal form for finite or "
        f"cofinite sets, got {type(a).__name__}"
    )


@dataclass(frozen=True)
class TableBij:
    """CanonicalEnum pre-composed with a finite permutation of the naturals.

    table lists the moved values as (n, perm(n)) pairs.
    """

    target: DomainExpr
    table: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        src = [n for n, _ in self.table]
        dst = [m for _, m in self.table]
        if len(set(src)) != len(src) or sorted(src) != sorted(dst):
            raise FilterError("table must be a finite permutation patch")

    def _perm(self, n: int) -> int:
        for a, b in self.table:
            if a == n:
                return b
        return n

    def _perm_inv(self, m: int) -> int:
        for a, b in self.table:
            if b == m:
                return a
        return m

    def source_domain(self) -> DomainExpr:
        return NAT

    def target_domain(self) -> DomainExpr:
        return self.target

    def apply(self, p: Point) -> Point:
        if not isinstance(p, NatPt):
            raise DomainError("TableBij is defined on naturals")
        return enum_point(self.target, self._perm(p.n))

    def unapply(self, q: Point) -> Point:
        return NatPt(self._perm_inv(point_index(self.target, q)))

    def image_set(self, a: SetExpr) -> SetExpr:
        if isinstance(a, FinSet):
            return finite_set_expr([self.apply(p) for p in a.elements], self.target)
        if isinstance(a, CofinSet):
            images = [self.apply(p) for p in a.excluded]
            return set_complement(finite_set_expr(images, self.target))
        raise UnsupportedPreimage("image of a non-leaf set under a table bijection")

    def preimage_set(self, a: SetExpr) -> SetExpr:
        pts = finite_points(a)
        if pts is not None:
            return fin_set([self.unapply(q) for q in pts], NAT)
        gaps = cofinite_excluded(a)
        if gaps is not None:
            return cofin_set([self.unapply(q) for q in gaps], NAT)
        return _raise_preimage(a)


BijectionSpec = Union[IdentityBij, CanonicalEnum, TableBij]


# ---------------------------------------------------------------------------
# maps (quasi-homomorphism witnesses; injective but not surjective in general)


@dataclass(frozen=True)
class IdentityMap:
    domain: DomainExpr

    def source_domain(self) -> DomainExpr:
        return self.domain

    def target_domain(self) -> DomainExpr:
        return self.domain

    def apply(self, p: Point) -> Point:
        return p

    def preimage_set(self, a: SetExpr) -> SetExpr:
        return a


@dataclass(frozen=True)
class IntoSectionMap:
    """The bijection of a component domain onto one section of target."""

    target: DomainExpr
    index: int

    def source_domain(self) -> DomainExpr:
        return component(self.target, self.index)

    def target_domain(self) -> DomainExpr:
        return self.target

    def apply(self, p: Point) -> Point:
        return make_point(self.target, self.index, p)

    def preimage_set(self, a: SetExpr) -> SetExpr:
        return section(a, self.index)


@dataclass(frozen=True)
class ConstantMap:
    source: DomainExpr
    point: Point
    target: DomainExpr

    def source_domain(self) -> DomainExpr:
        return self.source

    def target_domain(self) -> DomainExpr:
        return self.target

    def apply(self, p: Point) -> Point:
        return self.point

    def preimage_set(self, a: SetExpr) -> SetExpr:
        if set_member(self.point, a):
            return full_set(self.source)
        return empty_set(self.source)


MapSpec = Union[IdentityMap, IntoSectionMap, ConstantMap]


# ---------------------------------------------------------------------------
# filter expressions


class FilterExpr:
    __slots__ = ()


@dataclass(frozen=True)
class FilterFamily:
    """Eventually uniform family of filters: finitely many exceptions + tail."""

    exceptions: tuple[tuple[int, "FilterExpr"], ...]
    tail: "FilterExpr"

    def __post_init__(self) -> None:
        keys = [i for i, _ in self.exceptions]
        if keys != sorted(set(keys)) or any(i < 0 for i in keys):
            raise FilterError("family exception keys must be sorted distinct naturals")

    @property
    def keys(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.exceptions)

    def at(self, i: int) -> "FilterExpr":
        for k, f in self.exceptions:
            if k == i:
                return f
        return self.tail


@dataclass(frozen=True)
class SectionwiseFamily:
    """Family whose i-th member is the cylinder of inner's i-th filter.

    at(i) judges a set by its i-th section only; this is the family shape
    under which a Fubini sum becomes a limit.
    """

    inner: FilterFamily
    domain: DomainExpr

    def at(self, i: int) -> "FilterExpr":
        return SectionFilter(i, self.inner.at(i), self.domain)


@dataclass(frozen=True)
class RepeatedSectionwiseFamily:
    """Sectionwise family in which every cylinder recurs infinitely often.

    Member n is the cylinder at pair-row(n), so each section index owns an
    infinite set of family positions.  Limits of such families along the
    cofinite-base filter demand every section verdict at once.
    """

    inner: FilterFamily
    domain: DomainExpr

    def at(self, n: int) -> "FilterExpr":
        from .domains import cantor_unpair

        row = cantor_unpair(n)[0]
        return SectionFilter(row, self.inner.at(row), self.domain)


FamilyLike = Union[FilterFamily, SectionwiseFamily, RepeatedSectionwiseFamily]


@dataclass(frozen=True)
class Principal(FilterExpr):
    """All supersets of a fixed core set."""

    core: SetExpr


@dataclass(frozen=True)
class Frechet(FilterExpr):
    """All cofinite subsets of an infinite domain."""

    domain: DomainExpr = NAT

    def __post_init__(self) -> None:
        if isinstance(self.domain, Unit):
            raise FilterError("the cofinite filter over a one-point domain is improper")


@dataclass(frozen=True)
class Product(FilterExpr):
    """outer x inner: sets whose good-section index set lies in outer."""

    outer: FilterExpr
    inner: FilterExpr

    def __post_init__(self) -> None:
        if dom_of(self.outer) != NAT:
            raise FilterError("product outer factor must live on the naturals")


@dataclass(frozen=True)
class FubiniSum(FilterExpr):
    """base-indexed sum of a family: {M : {i : M_i in F_i} in base}."""

    base: FilterExpr
    family: FilterFamily

    def __post_init__(self) -> None:
        if dom_of(self.base) != NAT:
            raise FilterError("Fubini base must live on the naturals")


@dataclass(frozen=True)
class Limit(FilterExpr):
    """{A : {i : A in F_i} in base}."""

    base: FilterExpr
    family: FamilyLike

    def __post_init__(self) -> None:
        if dom_of(self.base) != NAT:
            raise FilterError("limit base must live on the naturals")
        if isinstance(self.family, RepeatedSectionwiseFamily) and not isinstance(
            self.base, Frechet
        ):
            raise FilterError("repeated sectionwise limits require a cofinite base")
        if isinstance(self.family, FilterFamily):
            doms = {dom_of(f) for _, f in self.family.exceptions}
            doms.add(dom_of(self.family.tail))
            if len(doms) != 1:
                raise FilterError("limit family members must share one domain")


@dataclass(frozen=True)
class Intersection(FilterExpr):
    left: FilterExpr
    right: FilterExpr

    def __post_init__(self) -> None:
        if dom_of(self.left) != dom_of(self.right):
            raise FilterError("intersection operands must share a domain")


@dataclass(frozen=True)
class Pushforward(FilterExpr):
    """The image filter {A : preimage of A under sigma is in inner}."""

    sigma: BijectionSpec
    inner: FilterExpr

    def __post_init__(self) -> None:
        if self.sigma.source_domain() != dom_of(self.inner):
            raise FilterError("pushforward bijection source must match the filter domain")


@dataclass(frozen=True)
class SectionFilter(FilterExpr):
    """Cylinder filter {M : the index-th section of M is in comp}."""

    index: int
    comp: FilterExpr
    domain: DomainExpr

    def __post_init__(self) -> None:
        if component(self.domain, self.index) != dom_of(self.comp):
            raise FilterError("section filter component domain mismatch")


def dom_of(f: FilterExpr) -> DomainExpr:
    if isinstance(f, Principal):
        return f.core.domain
    if isinstance(f, Frechet):
        return f.domain
    if isinstance(f, Product):
        return Prod(dom_of(f.inner))
    if isinstance(f, FubiniSum):
        return fubini_domain(f.family)
    if isinstance(f, Limit):
        if isinstance(f.family, FilterFamily):
            return dom_of(f.family.tail)
        return f.family.domain
    if isinstance(f, Intersection):
        return dom_of(f.left)
    if isinstance(f, Pushforward):
        return f.sigma.target_domain()
    if isinstance(f, SectionFilter):
        return f.domain
    raise FilterError(f"not a FilterExpr: {f!r}")


def fubini_domain(family: FilterFamily) -> DomainExpr:
    """Disjoint-sum domain of a Fubini family (tail component repeated)."""
    tail_dom = dom_of(family.tail)
    hetero = [i for i, g in family.exceptions if dom_of(g) != tail_dom]
    if not hetero:
        return DSum((), tail_dom)
    span = max(hetero) + 1
    comps = tuple(dom_of(family.at(i)) for i in range(span))
    return DSum(comps, tail_dom)


# ---------------------------------------------------------------------------
# constructors


def frechet(domain: DomainExpr = NAT) -> Frechet:
    return Frechet(domain)


def principal(core: SetExpr) -> Principal:
    validate_set(core)
    return Principal(core)


def filter_family(
    exceptions: Mapping[int, FilterExpr], tail: FilterExpr
) -> FilterFamily:
    kept = tuple((i, exceptions[i]) for i in sorted(exceptions) if exceptions[i] != tail)
    return FilterFamily(kept, tail)


def product(outer: FilterExpr, inner: FilterExpr) -> Product:
    return Product(outer, inner)


def fubini_sum(
    base: FilterExpr, exceptions: Mapping[int, FilterExpr], tail: FilterExpr
) -> FubiniSum:
    return FubiniSum(base, filter_family(exceptions, tail))


def limit_of(base: FilterExpr, family: FamilyLike) -> Limit:
    return Limit(base, family)


def meet(left: FilterExpr, right: FilterExpr) -> Intersection:
    return Intersection(left, right)


def pushforward(sigma: BijectionSpec, inner: FilterExpr) -> Pushforward:
    return Pushforward(sigma, inner)


def section_filter(index: int, comp: FilterExpr, domain: DomainExpr) -> SectionFilter:
    return SectionFilter(index, comp, domain)


def katetov(n: int) -> FilterExpr:
    """The depth-n tower: level 0 is the one-point principal ultrafilter,
    each next level is the cofinite filter times the previous one."""
    from .domains import DEFAULT_MAX_DEPTH

    if n < 0 or n > DEFAULT_MAX_DEPTH:
        raise DomainError(f"tower depth {n} outside [0, {DEFAULT_MAX_DEPTH}]")
    f: FilterExpr = Principal(fin_set((UNIT_PT,), UNIT))
    for _ in range(n):
        f = Product(Frechet(NAT), f)
    return f


def katetov_depth(f: FilterExpr) -> int | None:
    """Depth of f as a recognized tower copy, or None."""
    if isinstance(f, Principal) and f.core == fin_set((UNIT_PT,), UNIT):
        return 0
    if isinstance(f, Frechet):
        return 1
    if isinstance(f, Product) and isinstance(f.outer, Frechet):
        d = katetov_depth(f.inner)
        return None if d is None else d + 1
    if isinstance(f, FubiniSum) and isinstance(f.base, Frechet) and not f.family.exceptions:
        d = katetov_depth(f.family.tail)
        return None if d is None else d + 1
    if isinstance(f, Pushforward):
        return katetov_depth(f.inner)
    return None


# ---------------------------------------------------------------------------
# membership


def _verdict_set(keys: Iterable[int], verdict, tail_verdict: bool) -> SetExpr:
    trues, falses = [], []
    for i in keys:
        (trues if verdict(i) else falses).append(NatPt(i))
    if tail_verdict:
        return cofin_set(falses, NAT)
    return fin_set(trues, NAT)


def _section_verdicts(family: FilterFamily, a: SetExpr) -> SetExpr:
    """Index set {i : the i-th section of a is in F_i} as a normal form."""
    if not isinstance(a, SectionFamily):
        raise DomainError("sectionwise membership needs a sectionwise set")
    keys = sorted(set(family.keys) | set(exception_keys(a)))
    tail_verdict = member(family.tail, a.tail)
    return _verdict_set(keys, lambda i: member(family.at(i), section(a, i)), tail_verdict)


def member(f: FilterExpr, a: SetExpr) -> bool:
    """Exact membership of a normal-form set in the filter."""
    if a.domain != dom_of(f):
        raise DomainError(f"set over {a.domain!r} queried against filter over {dom_of(f)!r}")
    return _member(f, a)


def _member(f: FilterExpr, a: SetExpr) -> bool:
    if isinstance(f, Principal):
        return subset_check(f.core, a)
    if isinstance(f, Frechet):
        return cofinite_excluded(a) is not None
    if isinstance(f, Product):
        fam = FilterFamily((), f.inner)
        return _member(f.outer, _section_verdicts(fam, a))
    if isinstance(f, FubiniSum):
        return _member(f.base, _section_verdicts(f.family, a))
    if isinstance(f, Limit):
        return _member_limit(f, a)
    if isinstance(f, Intersection):
        return _member(f.left, a) and _member(f.right, a)
    if isinstance(f, Pushforward):
        return _member(f.inner, f.sigma.preimage_set(a))
    if isinstance(f, SectionFilter):
        return _member(f.comp, section(a, f.index))
    raise FilterError(f"not a FilterExpr: {f!r}")


def _member_limit(f: Limit, a: SetExpr) -> bool:
    fam = f.family
    if isinstance(fam, FilterFamily):
        tail_verdict = member(fam.tail, a)
        idx = _verdict_set(fam.keys, lambda i: member(fam.at(i), a), tail_verdict)
        return _member(f.base, idx)
    if isinstance(fam, SectionwiseFamily):
        keys = sorted(set(fam.inner.keys) | set(exception_keys(a)))
        fresh = (max(keys) + 1) if keys else 0
        tail_verdict = member(fam.at(fresh), a)
        idx = _verdict_set(keys, lambda i: member(fam.at(i), a), tail_verdict)
        return _member(f.base, idx)
    if isinstance(fam, RepeatedSectionwiseFamily):
        # every cylinder recurs on an infinite index set, so the verdict set
        # is cofinite exactly when every section verdict holds
        keys = sorted(set(fam.inner.keys) | set(exception_keys(a)))
        fresh = (max(keys) + 1) if keys else 0
        if not member(SectionFilter(fresh, fam.inner.tail, fam.domain), a):
            return False
        return all(
            member(SectionFilter(i, fam.inner.at(i), fam.domain), a) for i in keys
        )
    raise FilterError(f"not a filter family: {fam!r}")


def dual_member(f: FilterExpr, a: SetExpr) -> bool:
    """Membership of a in the dual ideal."""
    return member(f, set_complement(a))


# ---------------------------------------------------------------------------
# freeness via the kernel (the intersection of the filter)


def kernel_set(f: FilterExpr) -> SetExpr:
    """The intersection of all members of f, as a normal form."""
    if isinstance(f, Principal):
        return f.core
    if isinstance(f, Frechet):
        return empty_set(f.domain)
    if isinstance(f, Product):
        return _sectionwise_kernel(kernel_set(f.outer), FilterFamily((), f.inner), dom_of(f))
    if isinstance(f, FubiniSum):
        return _sectionwise_kernel(kernel_set(f.base), f.family, dom_of(f))
    if isinstance(f, Limit):
        return _limit_kernel(f)
    if isinstance(f, Intersection):
        return set_union(kernel_set(f.left), kernel_set(f.right))
    if isinstance(f, Pushforward):
        return f.sigma.image_set(kernel_set(f.inner))
    if isinstance(f, SectionFilter):
        return _column_set(f.domain, f.index, kernel_set(f.comp))
    raise FilterError(f"not a FilterExpr: {f!r}")


def _column_set(domain: DomainExpr, index: int, sec: SetExpr) -> SetExpr:
    excs = {index: sec}
    _fill_dsum_empties(domain, excs)
    tail_dom = domain.tail if isinstance(domain, DSum) else domain.inner
    return section_family(excs, empty_set(tail_dom), domain)


def _fill_dsum_empties(domain: DomainExpr, excs: dict) -> None:
    # only heterogeneous components need explicit entries; the rest default
    # to the sectionwise tail
    if isinstance(domain, DSum):
        for i, comp_dom in enumerate(domain.exceptions):
            if comp_dom != domain.tail:
                excs.setdefault(i, empty_set(comp_dom))


def _sectionwise_kernel(
    base_kernel: SetExpr, family: FilterFamily, domain: DomainExpr
) -> SetExpr:
    # a co-singleton at (i, rest) is in the sum iff rest avoids F_i's kernel
    # or the base accepts the index set short of i
    tail_dom = domain.tail if isinstance(domain, DSum) else domain.inner
    if isinstance(base_kernel, FinSet):
        live = {point_key(p)[0] for p in base_kernel.elements}
        excs = {i: kernel_set(family.at(i)) for i in live}
        for i in family.keys:
            excs.setdefault(i, empty_set(dom_of(family.at(i))))
        _fill_dsum_empties(domain, excs)
        return section_family(excs, empty_set(tail_dom), domain)
    dead = {point_key(p)[0] for p in base_kernel.excluded}
    excs = {}
    for i in sorted(dead | set(family.keys)):
        if i in dead:
            excs[i] = empty_set(dom_of(family.at(i)))
        else:
            excs[i] = kernel_set(family.at(i))
    _fill_dsum_empties(domain, excs)
    return section_family(excs, kernel_set(family.tail), domain)


def _limit_kernel(f: Limit) -> SetExpr:
    fam = f.family
    if isinstance(fam, SectionwiseFamily):
        essential = _essential_indices(f.base, fam.inner.keys)
        return _sectionwise_kernel(essential, fam.inner, fam.domain)
    if isinstance(fam, RepeatedSectionwiseFamily):
        # base is cofinite; a co-singleton fails iff its section verdict fails
        return _sectionwise_kernel(full_set(NAT), fam.inner, fam.domain)
    target = dom_of(fam.tail)
    keys = fam.keys
    kernels = [kernel_set(fam.at(i)) for i in keys]
    k_tail = kernel_set(fam.tail)
    out = empty_set(target)
    for mask in range(1 << (len(keys) + 1)):
        bits = [(mask >> b) & 1 == 1 for b in range(len(keys))]
        tail_bit = (mask >> len(keys)) & 1 == 1
        # region of points p with p in ker_i exactly per bits
        region = full_set(target)
        for ker, bit in zip(kernels, bits):
            region = set_intersect(region, ker if bit else set_complement(ker))
        region = set_intersect(region, k_tail if tail_bit else set_complement(k_tail))
        if is_empty_set(region):
            continue
        if tail_bit:
            good = fin_set([NatPt(i) for i, b in zip(keys, bits) if not b], NAT)
        else:
            good = cofin_set([NatPt(i) for i, b in zip(keys, bits) if b], NAT)
        if not member(f.base, good):
            out = set_union(out, region)
    return out


def _essential_indices(base: FilterExpr, keys: tuple[int, ...]) -> SetExpr:
    """{i : the set missing only i is NOT in base}, as a normal form."""
    fresh = (max(keys) + 1) if keys else 0
    tail_essential = not member(base, co_singleton(NatPt(fresh), NAT))
    return _verdict_set(
        keys, lambda i: not member(base, co_singleton(NatPt(i), NAT)), tail_essential
    )


def is_free(f: FilterExpr) -> bool:
    """True iff the filter has empty intersection."""
    return is_empty_set(kernel_set(f))


# ---------------------------------------------------------------------------
# Fubini sums as limits


def fubini_as_limit(f: FubiniSum) -> Limit:
    """The limit of cylinder filters that is membership-equivalent to f."""
    return Limit(f.base, SectionwiseFamily(f.family, fubini_domain(f.family)))


# ---------------------------------------------------------------------------
# sequences and filter convergence


@dataclass(frozen=True)
class LeafSeq:
    """Eventually constant rational values on a leaf domain."""

    entries: tuple[tuple[Point, Fraction], ...]
    tail: Fraction
    domain: DomainExpr


@dataclass(frozen=True)
class SectionSeq:
    exceptions: tuple[tuple[int, "SeqExpr"], ...]
    tail: "SeqExpr"
    domain: DomainExpr


SeqExpr = Union[LeafSeq, SectionSeq]


@dataclass(frozen=True)
class Divergent:
    pass


DIVERGENT = Divergent()


def seq_leaf(
    entries: Mapping[Point, Fraction | int], tail: Fraction | int, domain: DomainExpr
) -> LeafSeq:
    tail_v = Fraction(tail)
    kept = []
    for p in sorted(entries, key=point_key):
        check_point(p, domain)
        v = Fraction(entries[p])
        if v != tail_v:
            kept.append((p, v))
    return LeafSeq(tuple(kept), tail_v, domain)


def seq_sections(
    exceptions: Mapping[int, SeqExpr], tail: SeqExpr, domain: DomainExpr
) -> SectionSeq:
    kept = tuple(
        (i, exceptions[i]) for i in sorted(exceptions) if exceptions[i] != tail
    )
    return SectionSeq(kept, tail, domain)


def seq_value_at(s: SeqExpr, p: Point) -> Fraction:
    if isinstance(s, LeafSeq):
        for q, v in s.entries:
            if point_key(q) == point_key(p):
                return v
        return s.tail
    if isinstance(s, SectionSeq):
        from .domains import split_point

        i, rest = split_point(p)
        for k, sub in s.exceptions:
            if k == i:
                return seq_value_at(sub, rest)
        return seq_value_at(s.tail, rest)
    raise DomainError(f"not a SeqExpr: {s!r}")


def seq_values(s: SeqExpr) -> tuple[Fraction, ...]:
    if isinstance(s, LeafSeq):
        return tuple(sorted({v for _, v in s.entries} | {s.tail}))
    vals = set(seq_values(s.tail))
    for _, sub in s.exceptions:
        vals |= set(seq_values(sub))
    return tuple(sorted(vals))


def seq_level_set(s: SeqExpr, v: Fraction) -> SetExpr:
    """{p : s(p) = v} as a normal form."""
    if isinstance(s, LeafSeq):
        if s.tail == v:
            return cofin_set([p for p, w in s.entries if w != v], s.domain)
        return fin_set([p for p, w in s.entries if w == v], s.domain)
    excs = {i: seq_level_set(sub, v) for i, sub in s.exceptions}
    return section_family(excs, seq_level_set(s.tail, v), s.domain)


def flim(s: SeqExpr, f: FilterExpr) -> Fraction | Divergent:
    """The filter limit of an eventually uniform sequence, if any.

    The sequence attains finitely many values, so convergence to v reduces
    to membership of the exact level set of v once the tolerance drops below
    half the least value gap.
    """
    if s.domain != dom_of(f):
        raise DomainError("sequence and filter domains differ")
    for v in seq_values(s):
        if member(f, seq_level_set(s, v)):
            return v
    return DIVERGENT


# ---------------------------------------------------------------------------
# witness verification


@dataclass(frozen=True)
class SampleVerdict:
    index: int
    status: str  # "pass" | "fail" | "bad-sample"


@dataclass(frozen=True)
class WitnessReport:
    kind: str
    entries: tuple[SampleVerdict, ...]
    passed: bool


def verify_embedding(
    sigma: BijectionSpec,
    f_src: FilterExpr,
    f_dst: FilterExpr,
    samples: Iterable[SetExpr],
) -> WitnessReport:
    """Check that sigma sends each sampled member of f_src into f_dst."""
    entries = []
    ok = True
    for n, a in enumerate(samples):
        if not member(f_src, a):
            entries.append(SampleVerdict(n, "bad-sample"))
            continue
        if member(f_dst, sigma.image_set(a)):
            entries.append(SampleVerdict(n, "pass"))
        else:
            entries.append(SampleVerdict(n, "fail"))
            ok = False
    return WitnessReport("embedding", tuple(entries), ok)


def verify_quasi_homomorphism(
    pi: MapSpec,
    f_src: FilterExpr,
    f_dst: FilterExpr,
    samples: Iterable[SetExpr],
) -> WitnessReport:
    """Check that preimages under pi of sampled f_dst members lie in f_src."""
    entries = []
    ok = True
    for n, a in enumerate(samples):
        if not member(f_dst, a):
            entries.append(SampleVerdict(n, "bad-sample"))
            continue
        if member(f_src, pi.preimage_set(a)):
            entries.append(SampleVerdict(n, "pass"))
        else:
            entries.append(SampleVerdict(n, "fail"))
            ok = False
    return WitnessReport("quasi-homomorphism", tuple(entries), ok)


# ---------------------------------------------------------------------------
# diagonalizability


@dataclass(frozen=True)
class DiagYes:
    witness: SetExpr


@dataclass(frozen=True)
class DiagNo:
    pass


@dataclass(frozen=True)
class DiagUnknown:
    pass


DiagResult = Union[DiagYes, DiagNo, DiagUnknown]


def is_diagonalizable(f: FilterExpr) -> DiagResult:
    """Decide whether some infinite set is almost contained in every member."""
    if isinstance(f, Principal):
        if finite_points(f.core) is None:
            return DiagYes(f.core)
        return DiagNo()
    if isinstance(f, Frechet):
        return DiagYes(full_set(f.domain))
    if isinstance(f, SectionFilter):
        r = is_diagonalizable(f.comp)
        if isinstance(r, DiagYes):
            return DiagYes(_column_set(f.domain, f.index, r.witness))
        return r
    if isinstance(f, Intersection):
        for side in (f.left, f.right):
            r = is_diagonalizable(side)
            if isinstance(r, DiagYes):
                return r
        return DiagUnknown()
    if isinstance(f, Pushforward):
        r = is_diagonalizable(f.inner)
        if isinstance(r, DiagYes):
            try:
                return DiagYes(f.sigma.image_set(r.witness))
            except UnsupportedPreimage:
                return DiagUnknown()
        return r
    if isinstance(f, (Product, FubiniSum)):
        base = f.outer if isinstance(f, Product) else f.base
        fam = FilterFamily((), f.inner) if isinstance(f, Product) else f.family
        return _diag_sum(base, fam, dom_of(f))
    if isinstance(f, Limit):
        fam = f.family
        if isinstance(fam, FilterFamily) and not fam.exceptions:
            return is_diagonalizable(fam.tail)
        if isinstance(fam, SectionwiseFamily):
            return _diag_sum(f.base, fam.inner, fam.domain)
        if isinstance(fam, RepeatedSectionwiseFamily):
            return _diag_sum(Principal(full_set(NAT)), fam.inner, fam.domain)
        return DiagUnknown()
    return DiagUnknown()


def _diag_sum(base: FilterExpr, fam: FilterFamily, domain: DomainExpr) -> DiagResult:
    if isinstance(base, Principal):
        core_pts = finite_points(base.core)
        if core_pts == ():
            return DiagUnknown()
        candidates: list[int] = []
        if core_pts is not None:
            candidates = [point_key(p)[0] for p in core_pts]
        else:
            candidates = [i for i in fam.keys if set_member(NatPt(i), base.core)]
            tail_idx = _first_tail_index(base.core, fam.keys)
            if tail_idx is not None:
                candidates.append(tail_idx)
        answers = [is_diagonalizable(fam.at(i)) for i in candidates]
        for i, r in zip(candidates, answers):
            if isinstance(r, DiagYes):
                return DiagYes(_column_set(domain, i, r.witness))
        if core_pts is not None and all(isinstance(r, DiagNo) for r in answers):
            return DiagNo()
        return DiagUnknown()
    members = [g for _, g in fam.exceptions] + [fam.tail]
    try:
        base_free = is_free(base)
        members_free = [is_free(g) for g in members]
    except UnsupportedPreimage:
        return DiagUnknown()
    if base_free and all(members_free):
        return DiagNo()
    if isinstance(base, Frechet) and isinstance(fam.tail, Principal):
        tail_core = finite_points(fam.tail.core)
        if tail_core:
            # pack the tail cores into cofinitely many sections; the finitely
            # many bad sections of any member cost finitely many points
            excs = {i: empty_set(dom_of(fam.at(i))) for i in fam.keys}
            _fill_dsum_empties(domain, excs)
            return DiagYes(section_family(excs, fam.tail.core, domain))
    return DiagUnknown()


def _first_tail_index(core: SetExpr, keys: tuple[int, ...]) -> int | None:
    i = 0
    while i <= (max(keys) + 1 if keys else 0) + len(keys) + 1:
        if i not in keys and set_member(NatPt(i), core):
            return i
        i += 1
    return None


# ---------------------------------------------------------------------------
# side-condition tags


def is_borel_rank_one(f: FilterExpr) -> bool:
    """Syntactic tag for the bases accepted by the sharp limit bound."""
    if isinstance(f, Frechet):
        return True
    if isinstance(f, Intersection):
        pair = {type(f.left), type(f.right)}
        return pair == {Principal, Frechet}
    if isinstance(f, Pushforward):
        return is_borel_rank_one(f.inner)
    return False


# ---------------------------------------------------------------------------
# random generation for property tests


def gen_random_filter(domain: DomainExpr, depth_budget: int, seed: int) -> FilterExpr:
    rng = Random(seed)
    return _gen_filter(domain, depth_budget, rng)


def _nonempty(core: SetExpr) -> SetExpr:
    if is_empty_set(core):
        return full_set(core.domain)
    return core


def _gen_base(rng: Random) -> FilterExpr:
    roll = rng.random()
    if roll < 0.45:
        return Frechet(NAT)
    if roll < 0.8:
        pts = [NatPt(rng.randrange(8)) for _ in range(rng.randrange(4))]
        if rng.random() < 0.5:
            return Principal(_nonempty(fin_set(pts, NAT)))
        return Principal(cofin_set(pts, NAT))
    return Intersection(Principal(cofin_set([NatPt(rng.randrange(6))], NAT)), Frechet(NAT))


def _gen_filter(d: DomainExpr, budget: int, rng: Random) -> FilterExpr:
    choices = ["principal"]
    if not isinstance(d, Unit):
        choices.append("frechet")
    if budget > 0:
        choices += ["meet", "limit"]
        if is_indexed(d):
            choices += ["sectionwise", "sectionwise", "cylinder"]
    kind = rng.choice(choices)
    if kind == "principal":
        return Principal(_nonempty(gen_random_setexpr(d, 8, rng.randrange(1 << 30))))
    if kind == "frechet":
        return Frechet(d)
    if kind == "meet":
        return Intersection(
            _gen_filter(d, budget - 1, rng), _gen_filter(d, budget - 1, rng)
        )
    if kind == "limit":
        excs = {
            i: _gen_filter(d, 0, rng) for i in sorted(rng.sample(range(6), rng.randrange(3)))
        }
        fam = filter_family(excs, _gen_filter(d, 0, rng))
        return Limit(_gen_base(rng), fam)
    if kind == "cylinder":
        idx = rng.randrange(4)
        return SectionFilter(idx, _gen_filter(component(d, idx), budget - 1, rng), d)
    # sectionwise: a product or Fubini-style sum over this indexed domain
    inner_d = component(d, 10**6)  # tail component
    excs = {}
    if not isinstance(d, DSum) or not d.exceptions:
        excs = {
            i: _gen_filter(component(d, i), budget - 1, rng)
            for i in sorted(rng.sample(range(5), rng.randrange(3)))
        }
    else:
        excs = {
            i: _gen_filter(component(d, i), budget - 1, rng)
            for i in range(len(d.exceptions))
        }
    tail = _gen_filter(inner_d, budget - 1, rng)
    if isinstance(d, Prod) and not excs and rng.random() < 0.5:
        return Product(_gen_base(rng), tail)
    if isinstance(d, Prod):
        # a Prod domain is the sum domain with all components equal
        fam = filter_family(excs, tail)
        lim = Limit(_gen_base(rng), SectionwiseFamily(fam, d))
        return lim
    return FubiniSum(_gen_base(rng), filter_family(excs, tail))
