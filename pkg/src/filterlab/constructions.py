"""Concrete rank-collapse machinery and worked regression bundles.

This module packages the constructions the rest of the library only talks
about abstractly: disjoint line families inside tower domains, streaming
interleaving bijections with a fair allocation schedule, the pair of
relabelled tower copies whose meet collapses to rank one, the two-valued
limit built from such a pair, and a small worked example showing rank and
countable type coming apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from random import Random
from typing import Callable

from .domains import (
    DSum,
    DomainError,
    DomainExpr,
    FilterLabError,
    NAT,
    NatPt,
    Point,
    UNIT,
    UNIT_PT,
    cantor_pair,
    cantor_unpair,
    check_point,
    enum_point,
    index_of_tuple,
    point_from_key,
    point_index,
    point_key,
    tuple_of_index,
)
from .dsl import point_to_source
from .filters import (
    FilterError,
    FilterExpr,
    Frechet,
    IntoSectionMap,
    Principal,
    Pushforward,
    RepeatedSectionwiseFamily,
    UnsupportedPreimage,
    dom_of,
    filter_family,
    frechet,
    fubini_sum,
    is_diagonalizable,
    katetov,
    limit_of,
    member,
    principal,
)
from .ordinals import ONE, ZERO, ord_le, ord_min
from .rank import (
    CertifiedFilter,
    QHWitness,
    RankBounds,
    RankCertificate,
    bounds_of,
    ct_bound,
    CtBound,
    rank_bounds,
)
from .sets import (
    ProgrammaticSet,
    SectionFamily,
    SetExpr,
    CofinSet,
    FinSet,
    cofin_set,
    cofinite_excluded,
    empty_set,
    fin_set,
    finite_points,
    full_set,
    section,
    section_family,
    set_complement,
    set_member,
)

__all__ = [
    "BlockInterleaveBij",
    "CertifiedFilter",
    "CollapseLimit",
    "CollapsePair",
    "InterleavedPair",
    "PreconditionFailure",
    "PullbackSet",
    "SelectorShadow",
    "TypeGapBundle",
    "ZCoverWitness",
    "ZFamily",
    "collapse_limit",
    "collapse_pair",
    "even_splitter",
    "katetov",
    "member_extended",
    "preimage_grid",
    "programmatic_complement",
    "random_tower_member",
    "rank_type_gap_example",
    "selector_grid",
    "selector_shadow",
    "truncation_evidence",
    "two_valued_limit",
    "z_cover_witness",
    "z_family_grid",
]


class PreconditionFailure(FilterLabError):
    """A construction precondition failed; carries the offending verdict."""

    def __init__(self, condition: str, verdict: bool) -> None:
        super().__init__(f"{condition} (membership verdict: {verdict})")
        self.condition = condition
        self.verdict = verdict


# ---------------------------------------------------------------------------
# disjoint line families inside tower domains


@dataclass(frozen=True)
class ZFamily:
    """Pairwise disjoint infinite lines covering the depth-gamma tower domain.

    For gamma >= 2 line i is the innermost line: all points sharing the i-th
    coordinate prefix (in the canonical enumeration of prefix tuples) and
    varying the last coordinate.  For gamma = 1 the domain is linear, and
    line i is the i-th residue class of the pairing function.
    """

    gamma: int

    def __post_init__(self) -> None:
        if self.gamma < 1:
            raise DomainError("line families need depth at least 1")

    @cached_property
    def domain(self) -> DomainExpr:
        return dom_of(katetov(self.gamma))

    def prefix(self, i: int) -> tuple[int, ...]:
        if self.gamma == 1:
            return ()
        return tuple_of_index(i, self.gamma - 1)

    def line_point(self, i: int, j: int) -> Point:
        if self.gamma == 1:
            return point_from_key(self.domain, (cantor_pair(i, j),))
        return point_from_key(self.domain, self.prefix(i) + (j,))

    def line_contains(self, i: int, p: Point) -> bool:
        key = point_key(p)
        if self.gamma == 1:
            return cantor_unpair(key[0])[0] == i
        return key[: self.gamma - 1] == self.prefix(i)

    def line(self, i: int, trunc: int = 10_000) -> ProgrammaticSet:
        return ProgrammaticSet(
            lambda p: self.line_contains(i, p),
            trunc,
            self.domain,
            None,
            f"Z{i}",
        )

    def line_index_of(self, p: Point) -> int:
        """The unique line through p."""
        key = point_key(p)
        if self.gamma == 1:
            return cantor_unpair(key[0])[0]
        prefix = key[: self.gamma - 1]
        return index_of_tuple(prefix)


@dataclass(frozen=True)
class ZCoverWitness:
    """A line whose part outside the witnessed member is finite."""

    index: int
    prefix: tuple[int, ...]
    missing: tuple[Point, ...]


def z_cover_witness(zf: ZFamily, m: SetExpr) -> ZCoverWitness | None:
    """Find a line almost contained in m, exactly.

    Every member of the depth-gamma tower filter admits one; the walk picks
    the least coordinate chain whose innermost section is cofinite.  Returns
    None when no line works (in particular for non-members with all lines
    escaping infinitely often).
    """
    if m.domain != zf.domain:
        raise DomainError("witness search needs a set over the family's domain")
    if zf.gamma == 1:
        exc = cofinite_excluded(m)
        if exc is None:
            return None
        missing = tuple(p for p in exc if zf.line_contains(0, p))
        return ZCoverWitness(0, (), missing)
    found = _cofinite_chain(m, zf.gamma)
    if found is None:
        return None
    prefix, innermost = found
    excluded = cofinite_excluded(innermost) or ()
    missing = tuple(
        point_from_key(zf.domain, prefix + point_key(p)) for p in excluded
    )
    return ZCoverWitness(index_of_tuple(prefix), prefix, missing)


def _cofinite_chain(
    m: SetExpr, level: int
) -> tuple[tuple[int, ...], SetExpr] | None:
    """Least coordinate chain of m reaching a cofinite innermost section."""
    if level == 1:
        return ((), m) if cofinite_excluded(m) is not None else None
    if not isinstance(m, SectionFamily):
        return None
    span = max((k for k, _ in m.exceptions), default=-1) + 1
    for j in range(span + 2):
        rest = _cofinite_chain(section(m, j), level - 1)
        if rest is not None:
            return ((j,) + rest[0], rest[1])
    return None


def random_tower_member(gamma: int, seed: int) -> SetExpr:
    """A deterministic random member of the depth-gamma tower filter."""
    if gamma < 0:
        raise DomainError("tower depth must be a natural")
    return _random_member(gamma, Random(seed))


def _random_member(level: int, rng: Random) -> SetExpr:
    if level == 0:
        return fin_set((UNIT_PT,), UNIT)
    d = dom_of(katetov(level))
    sub = dom_of(katetov(level - 1))
    tail = _random_member(level - 1, rng)
    excs: dict[int, SetExpr] = {}
    for _ in range(rng.randrange(0, 4)):
        j = rng.randrange(0, 8)
        roll = rng.random()
        if roll < 0.4:
            excs[j] = empty_set(sub)
        elif roll < 0.7:
            excs[j] = _random_member(level - 1, rng)
        else:
            excs[j] = full_set(sub)
    return section_family(excs, tail, d)


# ---------------------------------------------------------------------------
# streaming interleaving bijections


def _round_start(r: int) -> int:
    # regular stages consumed by full sweeps 0..r-1; sweep r' visits the
    # (r'+1) x (r'+1) grid of line pairs once, row-major
    return r * (r + 1) * (2 * r + 1) // 6


def _round_pair(t: int) -> tuple[int, int]:
    """Line pair visited by the t-th regular stage."""
    r = 0
    while _round_start(r + 1) <= t:
        r += 1
    offset = t - _round_start(r)
    return offset // (r + 1), offset % (r + 1)


def _regular_stages(trunc: int) -> int:
    # every third global stage is a completion stage
    return trunc - trunc // 3


class InterleavedPair:
    """Two streaming bijections from the naturals onto a tower domain.

    Stages allocate one fresh natural each.  A regular stage serves one line
    pair (i, j) of the current sweep: side 0 receives the next unused point
    of line i, side 1 the next unused point of line j, so that natural lands
    in the preimage of both lines at once.  Every third stage instead
    allocates the least globally unused point on each side, which forces
    surjectivity.  Sweeps enumerate ever-larger square grids of pairs, so
    every pair is served at infinitely many stages.

    Memo tables grow on demand; an instance needs exclusive access.
    """

    def __init__(self, alpha: int) -> None:
        if alpha < 1:
            raise DomainError("interleaving needs tower depth at least 1")
        self.alpha = alpha
        self.zfamily = ZFamily(alpha)
        self.domain = self.zfamily.domain
        self._points: tuple[list[Point], list[Point]] = ([], [])
        self._used: tuple[set, set] = (set(), set())
        self._inv: tuple[dict, dict] = ({}, {})
        self._line_pos: tuple[dict[int, int], dict[int, int]] = ({}, {})
        self._enum_pos = [0, 0]
        self._reg_count = 0
        # row-major cursor into the current sweep's grid; must stay equal to
        # _round_pair(_reg_count)
        self._sweep = 0
        self._sweep_pair = (0, 0)

    def _next_line_point(self, side: int, i: int) -> Point:
        j = self._line_pos[side].get(i, 0)
        while True:
            p = self.zfamily.line_point(i, j)
            j += 1
            if point_key(p) not in self._used[side]:
                self._line_pos[side][i] = j
                return p

    def _next_enum_point(self, side: int) -> Point:
        m = self._enum_pos[side]
        while True:
            p = enum_point(self.domain, m)
            m += 1
            if point_key(p) not in self._used[side]:
                self._enum_pos[side] = m
                return p

    def _advance(self) -> None:
        g = len(self._points[0])
        if g % 3 == 2:
            picks = (self._next_enum_point(0), self._next_enum_point(1))
        else:
            i, j = self._sweep_pair
            if j + 1 <= self._sweep:
                self._sweep_pair = (i, j + 1)
            elif i + 1 <= self._sweep:
                self._sweep_pair = (i + 1, 0)
            else:
                self._sweep += 1
                self._sweep_pair = (0, 0)
            self._reg_count += 1
            picks = (self._next_line_point(0, i), self._next_line_point(1, j))
        for side, p in enumerate(picks):
            self._points[side].append(p)
            self._used[side].add(point_key(p))
            self._inv[side][point_key(p)] = g

    def ensure(self, n: int) -> None:
        """Allocate through stage n-1."""
        while len(self._points[0]) < n:
            self._advance()

    def pi(self, side: int, n: int) -> Point:
        if side not in (0, 1):
            raise DomainError("side must be 0 or 1")
        if n < 0:
            raise DomainError("stage must be a natural")
        self.ensure(n + 1)
        return self._points[side][n]

    def pi0(self, n: int) -> Point:
        return self.pi(0, n)

    def pi1(self, n: int) -> Point:
        return self.pi(1, n)

    def index_of(self, side: int, p: Point) -> int:
        """The stage at which p was allocated on the given side.

        Completion stages allocate the least unused point every third stage,
        so the point with enumeration index m appears by stage 3(m+2).
        """
        check_point(p, self.domain)
        key = point_key(p)
        if key not in self._inv[side]:
            self.ensure(3 * (point_index(self.domain, p) + 2))
        return self._inv[side][key]

    def joint_count(self, i: int, j: int, trunc: int) -> int:
        """How many naturals below trunc sit in both line preimages."""
        self.ensure(trunc)
        zf = self.zfamily
        return sum(
            1
            for n in range(trunc)
            if zf.line_contains(i, self._points[0][n])
            and zf.line_contains(j, self._points[1][n])
        )

    def preimage_indices(self, side: int, i: int, trunc: int) -> list[int]:
        self.ensure(trunc)
        zf = self.zfamily
        return [
            n for n in range(trunc) if zf.line_contains(i, self._points[side][n])
        ]

    def joint_count_table(self, trunc: int, lines: int) -> dict[tuple[int, int], int]:
        """joint_count for every line pair below `lines`, in one pass."""
        self.ensure(trunc)
        zf = self.zfamily
        counts: dict[tuple[int, int], int] = {}
        for n in range(trunc):
            i = zf.line_index_of(self._points[0][n])
            j = zf.line_index_of(self._points[1][n])
            if i < lines and j < lines:
                counts[(i, j)] = counts.get((i, j), 0) + 1
        return counts

    def sweeps_completed(self, trunc: int) -> int:
        """Full pair sweeps finished within the first trunc stages."""
        regs = _regular_stages(trunc)
        r = 0
        while _round_start(r + 1) <= regs:
            r += 1
        return r

    def fair_lower_bound(self, i: int, j: int, trunc: int) -> int:
        """A guaranteed lower bound on joint_count(i, j, trunc).

        Pair (i, j) is served once per completed sweep from sweep max(i, j)
        on, and a served stage always lands in both preimages.
        """
        return max(0, self.sweeps_completed(trunc) - max(i, j))


@dataclass(frozen=True)
class BlockInterleaveBij:
    """One side of an interleaved pair, viewed as a bijection onto omega.

    It sends the tower-domain point allocated at stage n to the natural n.
    The graph is streamed, never closed-form, so set-level image and
    preimage queries are refused rather than truncated.
    """

    pair: InterleavedPair
    side: int

    def source_domain(self) -> DomainExpr:
        return self.pair.domain

    def target_domain(self) -> DomainExpr:
        return NAT

    def apply(self, p: Point) -> Point:
        return NatPt(self.pair.index_of(self.side, p))

    def unapply(self, q: Point) -> Point:
        if not isinstance(q, NatPt):
            raise DomainError("expected a natural")
        return self.pair.pi(self.side, q.n)

    def image_set(self, a: SetExpr) -> SetExpr:
        raise UnsupportedPreimage(
            "no closed form for set images under a streaming interleaving"
        )

    def preimage_set(self, a: SetExpr) -> SetExpr:
        raise UnsupportedPreimage(
            "no closed form for set preimages under a streaming interleaving"
        )


# ---------------------------------------------------------------------------
# the collapse pair


@dataclass(frozen=True)
class PullbackSet:
    """{n : pi_side(n) in inner} for a symbolic inner set.

    This is the registered sublanguage on which the collapse oracles answer
    exactly: pushing the set forward along the matching side recovers inner
    itself, so membership reduces to a tower membership query.
    """

    side: int
    inner: SetExpr
    label: str = ""

    def as_programmatic(self, pair: InterleavedPair, trunc: int = 10_000) -> ProgrammaticSet:
        def pred(p: Point) -> bool:
            return set_member(pair.pi(self.side, point_key(p)[0]), self.inner)

        return ProgrammaticSet(
            pred, trunc, NAT, None, self.label or f"pullback[{self.side}]"
        )


@dataclass(frozen=True)
class CollapsePair:
    alpha: int
    pair: InterleavedPair
    g0: CertifiedFilter
    g1: CertifiedFilter
    meet: CertifiedFilter
    push0: FilterExpr
    push1: FilterExpr


def collapse_pair(alpha: int) -> CollapsePair:
    """Two certified relabelled copies of the depth-alpha tower whose meet
    carries certified bounds [1,1].

    Each side's bounds are computed by the rank engine on the pushforward
    expression (a bijective relabelling preserves rank); the meet's upper
    bound rests on the finite-selector argument, recorded as provenance and
    shadowed at finite truncations by selector_shadow.
    """
    pair = InterleavedPair(alpha)
    tower = katetov(alpha)
    push0 = Pushforward(BlockInterleaveBij(pair, 0), tower)
    push1 = Pushforward(BlockInterleaveBij(pair, 1), tower)
    b0, _ = rank_bounds(push0)
    b1, _ = rank_bounds(push1)

    def oracle(side: int) -> Callable[[object], bool | None]:
        def decide(a: object) -> bool | None:
            if isinstance(a, PullbackSet):
                if a.side == side:
                    return member(tower, a.inner)
                return None
            if isinstance(a, FinSet):
                return False
            if isinstance(a, CofinSet):
                return True
            return None

        return decide

    copy_note = (
        f"bijective relabelling of the depth-{alpha} tower; "
        "bounds from the rank engine on the pushforward expression"
    )
    g0 = CertifiedFilter("G0", NAT, b0, copy_note, oracle(0))
    g1 = CertifiedFilter("G1", NAT, b1, copy_note, oracle(1))

    def meet_decide(a: object) -> bool | None:
        u, v = g0.decide(a), g1.decide(a)
        if u is False or v is False:
            return False
        if u is True and v is True:
            return True
        return None

    meet = CertifiedFilter(
        "G0&G1",
        NAT,
        bounds_of(1, 1),
        "meet of the interleaved pair: free because both sides are free, and "
        "the finite-selector argument caps its rank at one",
        meet_decide,
    )
    return CollapsePair(alpha, pair, g0, g1, meet, push0, push1)


def truncation_evidence(
    pair: InterleavedPair, side: int, a: ProgrammaticSet | SetExpr, trunc: int, lines: int = 10
) -> list[tuple[int, int]]:
    """Per-line hit counts of the pushed-forward truncated set."""
    pair.ensure(trunc)
    counts = [0] * lines
    for n in range(trunc):
        p = NatPt(n)
        inside = (
            a.predicate(p) if isinstance(a, ProgrammaticSet) else set_member(p, a)
        )
        if not inside:
            continue
        i = pair.zfamily.line_index_of(pair.pi(side, n))
        if i < lines:
            counts[i] += 1
    return list(enumerate(counts))


# ---------------------------------------------------------------------------
# the selector shadow


@dataclass(frozen=True)
class SelectorShadow:
    """Finite-truncation shadow of the selector argument.

    selectors[i] picks, for every residue class E_j with j > i that meets
    the side-1 preimage of line i below trunc, the least such natural.  Each
    class E_j can then meet the union of selectors at most j times.
    """

    trunc: int
    selectors: tuple[tuple[int, tuple[int, ...]], ...]
    e_hits: tuple[tuple[int, int], ...]
    available: tuple[tuple[int, int], ...]
    bound_ok: bool
    problems: tuple[str, ...]


def selector_shadow(
    pair: InterleavedPair, trunc: int, i_max: int = 20, j_max: int = 20
) -> SelectorShadow:
    pair.ensure(trunc)
    zf = pair.zfamily
    selectors: list[tuple[int, tuple[int, ...]]] = []
    available: list[tuple[int, int]] = []
    union: set[int] = set()
    for i in range(i_max):
        cells: dict[int, int] = {}
        for n in range(trunc):
            if not zf.line_contains(i, pair.pi(1, n)):
                continue
            j = cantor_unpair(n)[0]
            if j > i and (j not in cells or n < cells[j]):
                cells[j] = n
        picks = tuple(sorted(cells.values()))
        selectors.append((i, picks))
        available.append((i, len(cells)))
        union.update(picks)
    e_hits: list[tuple[int, int]] = []
    problems: list[str] = []
    for j in range(j_max):
        hits = sum(1 for n in union if cantor_unpair(n)[0] == j)
        e_hits.append((j, hits))
        if hits > j:
            problems.append(f"class E{j} meets the selector union {hits} > {j} times")
    return SelectorShadow(
        trunc,
        tuple(selectors),
        tuple(e_hits),
        tuple(available),
        not problems,
        tuple(problems),
    )


# ---------------------------------------------------------------------------
# programmatic membership and the two-valued limit


def member_extended(f: FilterExpr, a: SetExpr | ProgrammaticSet) -> bool:
    """Membership extended to programmatic sets where an exact rule exists."""
    if isinstance(a, SetExpr):
        return member(f, a)
    if not isinstance(a, ProgrammaticSet):
        raise FilterError(f"not a set: {a!r}")
    if isinstance(f, Principal):
        pts = finite_points(f.core)
        if pts is None:
            raise FilterError(
                "programmatic membership under a principal filter needs a finite core"
            )
        return all(a.predicate(p) for p in pts)
    if isinstance(f, Frechet):
        if a.frechet_class == "cofinite":
            return True
        if a.frechet_class in ("finite", "neither"):
            return False
        raise FilterError("programmatic set carries no registered classification")
    raise FilterError(
        f"no exact programmatic membership rule for {type(f).__name__}"
    )


def programmatic_complement(a: ProgrammaticSet) -> ProgrammaticSet:
    flip = {"finite": "cofinite", "cofinite": "finite", "neither": "neither"}
    cls = flip.get(a.frechet_class) if a.frechet_class else None
    label = f"complement of {a.label}" if a.label else ""
    return ProgrammaticSet(
        lambda p: not a.predicate(p), a.truncation_bound, a.domain, cls, label
    )


def even_splitter(trunc: int = 10_000) -> ProgrammaticSet:
    return ProgrammaticSet(
        lambda p: point_key(p)[0] % 2 == 0, trunc, NAT, "neither", "evens"
    )


def two_valued_limit(
    base: FilterExpr,
    h: SetExpr | ProgrammaticSet,
    g0: CertifiedFilter,
    g1: CertifiedFilter,
    bounds: RankBounds | None = None,
) -> CertifiedFilter:
    """The limit of the family that plays g0 on h and g1 off h.

    Requires that base decides neither h nor its complement; then the
    verdict set of any candidate is one of the four block patterns and the
    limit coincides with the meet of g0 and g1.
    """
    if g0.domain != g1.domain:
        raise FilterError("both limit values must live on the same domain")
    if member_extended(base, h):
        raise PreconditionFailure(
            "the splitting set belongs to the base filter", True
        )
    hc = set_complement(h) if isinstance(h, SetExpr) else programmatic_complement(h)
    if member_extended(base, hc):
        raise PreconditionFailure(
            "the complement of the splitting set belongs to the base filter", True
        )

    def decide(a: object) -> bool | None:
        u, v = g0.decide(a), g1.decide(a)
        if u is False or v is False:
            return False
        if u is True and v is True:
            return True
        return None

    if bounds is None:
        both_free = ord_le(ONE, g0.bounds.lo) and ord_le(ONE, g1.bounds.lo)
        bounds = RankBounds(ONE if both_free else ZERO, _min_hi(g0.bounds, g1.bounds))
    return CertifiedFilter(
        f"limit({g0.name},{g1.name})",
        g0.domain,
        bounds,
        "two-valued limit: equals the meet of its two values because the "
        "base filter decides neither block",
        decide,
    )


def _min_hi(a: RankBounds, b: RankBounds):
    if a.hi is None:
        return b.hi
    if b.hi is None:
        return a.hi
    return ord_min(a.hi, b.hi)


@dataclass(frozen=True)
class CollapseLimit:
    limit: CertifiedFilter
    parts: CollapsePair
    base: FilterExpr
    h: SetExpr | ProgrammaticSet


def collapse_limit(
    alpha: int,
    base: FilterExpr | None = None,
    h: SetExpr | ProgrammaticSet | None = None,
) -> CollapseLimit:
    """The two-valued limit over a collapse pair, certified at [1,1]."""
    cp = collapse_pair(alpha)
    base = frechet(NAT) if base is None else base
    h = even_splitter() if h is None else h
    lim = two_valued_limit(base, h, cp.g0, cp.g1, bounds=cp.meet.bounds)
    return CollapseLimit(lim, cp, base, h)


# ---------------------------------------------------------------------------
# a worked example: rank one, countable type two


@dataclass(frozen=True)
class TypeGapBundle:
    filt: FilterExpr
    bounds: RankBounds
    certificate: RankCertificate
    ct: CtBound
    diag: object
    limit_form: FilterExpr
    commentary: str


def rank_type_gap_example() -> TypeGapBundle:
    """The all-sections-cofinite filter: rank one yet countable type two.

    The filter demands every section be cofinite.  A single section map is a
    quasi-homomorphism from the cofinite filter, pinning the rank at one,
    while the cheapest limit presentation repeats the section filters, so
    the countable-type bound stays at two.
    """
    dom = DSum((), NAT)
    filt = fubini_sum(principal(full_set(NAT)), {}, frechet(NAT))
    samples = (
        full_set(dom),
        section_family({0: cofin_set([NatPt(5)], NAT)}, cofin_set((), NAT), dom),
        section_family(
            {2: cofin_set([NatPt(0), NatPt(1)], NAT)},
            cofin_set([NatPt(7)], NAT),
            dom,
        ),
    )
    witness = QHWitness(frechet(NAT), IntoSectionMap(dom, 0), samples)
    bounds, cert = rank_bounds(filt, witnesses=(witness,))
    ct = ct_bound(filt)
    diag = is_diagonalizable(filt)
    limit_form = limit_of(
        frechet(NAT), RepeatedSectionwiseFamily(filter_family({}, frechet(NAT)), dom)
    )
    commentary = (
        "The countable type is exactly two: a level-one presentation would "
        "make this a filter of countable type one, and every such filter on "
        "this domain either fails to be free or is a finite-exception "
        "relabelling of the depth-one tower, which this filter is not.  "
        "That argument is recorded here and deliberately left unchecked; "
        "the library certifies only the upper bound."
    )
    return TypeGapBundle(filt, bounds, cert, ct, diag, limit_form, commentary)


# ---------------------------------------------------------------------------
# plain-text truncation grids


def z_family_grid(zf: ZFamily, lines: int, per_line: int) -> list[str]:
    """One line per index, members listed in order."""
    rows = []
    for i in range(lines):
        pts = " ".join(point_to_source(zf.line_point(i, j)) for j in range(per_line))
        rows.append(f"Z{i}: {pts}")
    return rows


def preimage_grid(
    pair: InterleavedPair, side: int, lines: int, trunc: int, limit: int = 12
) -> list[str]:
    rows = []
    for i in range(lines):
        ns = pair.preimage_indices(side, i, trunc)[:limit]
        rows.append(f"Z{i}: {' '.join(str(n) for n in ns)}")
    return rows


def selector_grid(shadow: SelectorShadow) -> list[str]:
    rows = [f"S{i}: {' '.join(str(n) for n in picks)}" for i, picks in shadow.selectors]
    rows.append(
        "E-hits: " + " ".join(f"{j}:{h}" for j, h in shadow.e_hits)
    )
    return rows
