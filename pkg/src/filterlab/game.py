"""Finite-horizon simulator for the covering game on a filter.

Player I names a member C_n of the filter, player II answers with a finite
subset F_n of C_n.  Whether the accumulated union lands in the dual is a
property of infinite play, so the engine only records legal finite
transcripts and checks per-round invariants; no winner is ever declared.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Callable, Sequence

from .domains import (
    DSum,
    DomainError,
    DomainExpr,
    FilterLabError,
    NatPt,
    Point,
    component,
    enum_point,
    is_linear_domain,
    make_point,
    point_key,
)
from .filters import (
    FilterExpr,
    FilterFamily,
    IdentityBij,
    dom_of,
    member,
)
from .sets import (
    CofinSet,
    FinSet,
    SetExpr,
    empty_set,
    exception_keys,
    first_point,
    full_set,
    finite_set_expr,
    is_empty_set,
    section,
    set_complement,
    set_member,
    set_span,
    truncate,
)
from .dsl import point_to_source, set_to_source


class IllegalMove(FilterLabError):
    """A strategy produced a move violating the game rules."""


class NoUniversalWitness(FilterLabError):
    """No generated set fit inside the opponent's move within the bound."""


class BadSample(FilterLabError):
    """A verification sample was not a member of the filter."""


class SearchExhausted(FilterLabError):
    """A strategy's bounded point search came up empty."""


# ---------------------------------------------------------------------------
# transcripts


@dataclass(frozen=True)
class Round:
    c: SetExpr
    f: tuple[Point, ...]


@dataclass(frozen=True)
class GameState:
    filt: FilterExpr
    rounds: tuple[Round, ...]

    @property
    def round_number(self) -> int:
        return len(self.rounds)

    def union_points(self) -> tuple[Point, ...]:
        return _union(self.rounds)


@dataclass(frozen=True)
class Transcript:
    filt: FilterExpr
    rounds: tuple[Round, ...]
    seed: int
    player_i: str
    player_ii: str


def _union(rounds: Sequence[Round]) -> tuple[Point, ...]:
    seen: dict[tuple, Point] = {}
    for r in rounds:
        for p in r.f:
            seen.setdefault(point_key(p), p)
    return tuple(seen[k] for k in sorted(seen))


# ---------------------------------------------------------------------------
# player I strategies


class FullSetI:
    """Plays the full set every round."""

    name = "full"

    def start(self, f: FilterExpr, seed: int) -> "_FullMover":
        return _FullMover(dom_of(f))


class _FullMover:
    def __init__(self, domain: DomainExpr) -> None:
        self.domain = domain

    def move(self, state: GameState) -> SetExpr:
        return full_set(self.domain)


class ExcludeUnionI:
    """Plays the complement of everything player II has claimed so far."""

    name = "exclude-union"

    def start(self, f: FilterExpr, seed: int) -> "_ExcludeMover":
        return _ExcludeMover(dom_of(f))


class _ExcludeMover:
    def __init__(self, domain: DomainExpr) -> None:
        self.domain = domain

    def move(self, state: GameState) -> SetExpr:
        return set_complement(finite_set_expr(state.union_points(), self.domain))


class CopyStrategyI:
    """Plays images of the tail-columns sets under an embedding.

    Move n is the image of the set of all points in columns n and beyond of
    the source domain, so player II's answers pull back into ever later
    columns.
    """

    name = "copy"

    def __init__(self, sigma=None) -> None:
        self.sigma = sigma

    def start(self, f: FilterExpr, seed: int) -> "_CopyMover":
        sigma = self.sigma if self.sigma is not None else IdentityBij(dom_of(f))
        return _CopyMover(sigma)


class _CopyMover:
    def __init__(self, sigma) -> None:
        self.sigma = sigma

    def move(self, state: GameState) -> SetExpr:
        return self.sigma.image_set(tail_columns(self.sigma.source_domain(), state.round_number))


def tail_columns(domain: DomainExpr, n: int) -> SetExpr:
    """All points in sections n and beyond of an indexed domain."""
    from .sets import section_family

    excs = {i: empty_set(component(domain, i)) for i in range(n)}
    tail_dom = domain.tail if isinstance(domain, DSum) else domain.inner
    return section_family(excs, full_set(tail_dom), domain)


# ---------------------------------------------------------------------------
# universal families


@dataclass(frozen=True)
class UniversalFamily:
    """Indexed families Z_n = {Z_n^k : k} of finite nonempty point sets."""

    name: str
    domain: DomainExpr
    generator: Callable[[int, int], tuple[Point, ...]]
    stability_bound: Callable[[SetExpr, int], int] | None = None
    n_independent: bool = False


def singleton_family(domain: DomainExpr) -> UniversalFamily:
    """Z_n^k = {k-th point}; universal for the cofinite filter."""
    stability = None
    if is_linear_domain(domain):
        stability = lambda m, n: set_span(m)
    return UniversalFamily(
        "singletons",
        domain,
        lambda n, k: (enum_point(domain, k),),
        stability_bound=stability,
        n_independent=True,
    )


def column_segments_family(domain: DomainExpr) -> UniversalFamily:
    """Z_n^k = {k} x [0, n] over a product domain."""

    def gen(n: int, k: int) -> tuple[Point, ...]:
        comp = component(domain, k)
        return tuple(make_point(domain, k, enum_point(comp, j)) for j in range(n + 1))

    return UniversalFamily(
        "column-segments", domain, gen, stability_bound=lambda m, n: set_span(m)
    )


# ---------------------------------------------------------------------------
# player II strategies


class UniversalII:
    """Answers C_n with the first generated set contained in it."""

    name = "universal"

    def __init__(self, family: UniversalFamily | None = None, bound: int = 10**4) -> None:
        self.family = family
        self.bound = bound

    def start(self, f: FilterExpr, seed: int) -> "_UniversalMover":
        fam = self.family if self.family is not None else singleton_family(dom_of(f))
        return _UniversalMover(fam, self.bound)


class _UniversalMover:
    def __init__(self, family: UniversalFamily, bound: int) -> None:
        self.family = family
        self.bound = bound

    def move(self, state: GameState, c: SetExpr) -> tuple[Point, ...]:
        n = state.round_number
        for k in range(self.bound + 1):
            z = self.family.generator(n, k)
            if all(set_member(p, c) for p in z):
                return z
        raise NoUniversalWitness(
            f"no generated set fit inside the round-{n} move within k <= {self.bound}"
        )


class FreshElementII:
    """Claims the first point of C_n not yet in the union."""

    name = "fresh"

    def __init__(self, bound: int = 10**5) -> None:
        self.bound = bound

    def start(self, f: FilterExpr, seed: int) -> "_FreshMover":
        return _FreshMover(dom_of(f), self.bound)


class _FreshMover:
    def __init__(self, domain: DomainExpr, bound: int) -> None:
        self.domain = domain
        self.bound = bound

    def move(self, state: GameState, c: SetExpr) -> tuple[Point, ...]:
        taken = {point_key(p) for p in state.union_points()}
        for m in range(self.bound):
            p = enum_point(self.domain, m)
            if point_key(p) not in taken and set_member(p, c):
                return (p,)
        raise SearchExhausted(f"no fresh point of the move found below {self.bound}")


class RandomFiniteII:
    """Claims a small random subset of C_n, deterministically from the seed.

    Points are drawn near the front of the move: each draw walks the set,
    picking a random nonempty section within `window` of the least occupied
    index at every level.
    """

    name = "random"

    def __init__(self, window: int = 25) -> None:
        self.window = window

    def start(self, f: FilterExpr, seed: int) -> "_RandomMover":
        return _RandomMover(Random(2 * seed + 1), self.window)


class _RandomMover:
    def __init__(self, rng: Random, window: int) -> None:
        self.rng = rng
        self.window = window

    def move(self, state: GameState, c: SetExpr) -> tuple[Point, ...]:
        picked = [_random_member(c, self.rng, self.window) for _ in range(1 + self.rng.randrange(3))]
        uniq = {point_key(p): p for p in picked}
        return tuple(uniq[k] for k in sorted(uniq))


def _random_member(a: SetExpr, rng: Random, window: int) -> Point:
    """A member of a nonempty set, biased toward small coordinates."""
    if isinstance(a, FinSet):
        if not a.elements:
            raise SearchExhausted("drew from an empty set")
        return rng.choice(a.elements)
    if isinstance(a, CofinSet):
        cut = {point_key(q)[0] for q in a.excluded}
        while True:
            n = rng.randrange(window + len(cut))
            if n not in cut:
                return NatPt(n)
    lead = first_point(a)
    if lead is None:
        raise SearchExhausted("drew from an empty set")
    lo = point_key(lead)[0]
    for _ in range(16):
        i = lo + rng.randrange(window)
        sec = section(a, i)
        if not is_empty_set(sec):
            return make_point(a.domain, i, _random_member(sec, rng, window))
    return make_point(a.domain, lo, _random_member(section(a, lo), rng, window))


STRATEGIES_I = {
    "full": FullSetI,
    "exclude-union": ExcludeUnionI,
    "copy": CopyStrategyI,
}

STRATEGIES_II = {
    "universal": UniversalII,
    "fresh": FreshElementII,
    "random": RandomFiniteII,
}


def make_player_i(name: str):
    if name not in STRATEGIES_I:
        raise DomainError(f"unknown player I strategy {name!r}; have {sorted(STRATEGIES_I)}")
    return STRATEGIES_I[name]()


def make_player_ii(name: str):
    if name not in STRATEGIES_II:
        raise DomainError(f"unknown player II strategy {name!r}; have {sorted(STRATEGIES_II)}")
    return STRATEGIES_II[name]()


# ---------------------------------------------------------------------------
# play and replay


def play(f: FilterExpr, s_i, s_ii, rounds: int, seed: int) -> Transcript:
    if rounds < 1:
        raise DomainError("a game needs at least one round")
    mover_i = s_i.start(f, seed)
    mover_ii = s_ii.start(f, seed)
    state = GameState(f, ())
    for n in range(rounds):
        c = mover_i.move(state)
        if c.domain != dom_of(f):
            raise IllegalMove(f"player I, round {n}: move over the wrong domain")
        if not member(f, c):
            raise IllegalMove(f"player I, round {n}: move is not a member of the filter")
        pts = mover_ii.move(state, c)
        uniq = {point_key(p): p for p in pts}
        pts = tuple(uniq[k] for k in sorted(uniq))
        for p in pts:
            if not set_member(p, c):
                raise IllegalMove(
                    f"player II, round {n}: point {point_to_source(p)} outside the move"
                )
        state = GameState(f, state.rounds + (Round(c, pts),))
    return Transcript(f, state.rounds, seed, s_i.name, s_ii.name)


def replay_transcript(t: Transcript, s_i=None, s_ii=None) -> Transcript:
    """Re-run the recorded strategies and seed; equality means determinism."""
    s_i = s_i if s_i is not None else make_player_i(t.player_i)
    s_ii = s_ii if s_ii is not None else make_player_ii(t.player_ii)
    return play(t.filt, s_i, s_ii, len(t.rounds), t.seed)


def validate_transcript(t: Transcript) -> list[str]:
    """Re-check every legality invariant; empty list means a legal transcript."""
    problems = []
    for n, r in enumerate(t.rounds):
        if not member(t.filt, r.c):
            problems.append(f"round {n}: player I move not in the filter")
        for p in r.f:
            if not set_member(p, r.c):
                problems.append(f"round {n}: claimed point {point_to_source(p)} outside the move")
        keys = [point_key(p) for p in r.f]
        if keys != sorted(set(keys)):
            problems.append(f"round {n}: claimed points not sorted and distinct")
    return problems


def transcript_lines(t: Transcript) -> list[str]:
    lines = []
    for n in range(len(t.rounds)):
        r = t.rounds[n]
        u = _union(t.rounds[: n + 1])
        pts = ",".join(point_to_source(p) for p in r.f)
        lines.append(f"n={n} C={set_to_source(r.c)} F={{{pts}}} |U|={len(u)}")
    return lines


def copy_column_bound(t: Transcript, sigma=None) -> tuple[bool, list[str]]:
    """Check the per-column budget of a copy-strategy transcript.

    Pulled back through the embedding, round m only ever touches columns at
    index m and beyond, so at every round the column-i trace of the union
    has at most sum of |F_m| for m <= i points.
    """
    sigma = sigma if sigma is not None else IdentityBij(dom_of(t.filt))
    problems = []
    ok = True
    for r in range(len(t.rounds)):
        u = _union(t.rounds[: r + 1])
        counts: dict[int, int] = {}
        for p in u:
            col = point_key(sigma.unapply(p))[0]
            counts[col] = counts.get(col, 0) + 1
        for col, cnt in counts.items():
            budget = sum(len(t.rounds[m].f) for m in range(min(col, r) + 1))
            if cnt > budget:
                ok = False
                problems.append(
                    f"round {r}: column {col} holds {cnt} points, budget {budget}"
                )
    return ok, problems


# ---------------------------------------------------------------------------
# universality and diagonalization verification


@dataclass(frozen=True)
class SampleUniversality:
    index: int
    witnesses: tuple[tuple[int, int | None], ...]  # (n, least fitting k or None)
    diag: tuple[int, int] | None  # (n, exact threshold m)


@dataclass(frozen=True)
class UniversalityReport:
    entries: tuple[SampleUniversality, ...]
    passed: bool


def verify_universal_family(
    u: UniversalFamily,
    f: FilterExpr,
    samples: Sequence[SetExpr],
    k_bound: int = 10**4,
    n_check: int = 3,
    diag_n_bound: int = 8,
) -> UniversalityReport:
    entries = []
    passed = True
    for idx, m in enumerate(samples):
        if not member(f, m):
            raise BadSample(f"sample {idx} is not a member of the filter")
        wits = []
        for n in range(n_check):
            least = None
            for k in range(k_bound + 1):
                if all(set_member(p, m) for p in u.generator(n, k)):
                    least = k
                    break
            wits.append((n, least))
            if least is None:
                passed = False
        diag = _diag_threshold(u, m, diag_n_bound)
        if diag is None:
            passed = False
        entries.append(SampleUniversality(idx, tuple(wits), diag))
    return UniversalityReport(tuple(entries), passed)


def _meets(u: UniversalFamily, m: SetExpr, n: int, k: int) -> bool:
    return any(set_member(p, m) for p in u.generator(n, k))


def _diag_threshold(u: UniversalFamily, m: SetExpr, n_bound: int) -> tuple[int, int] | None:
    """An (n, threshold) with Z_n^k meeting m for every k past the threshold.

    Exact: the generator declares an index past which the meeting verdict is
    k-uniform on eventually uniform sets.
    """
    if u.stability_bound is None:
        return None
    for n in range(n_bound):
        k0 = max(u.stability_bound(m, n), 0)
        if not _meets(u, m, n, k0):
            continue
        last_miss = -1
        for k in range(k0):
            if not _meets(u, m, n, k):
                last_miss = k
        return (n, last_miss + 1)
    return None


# ---------------------------------------------------------------------------
# separator verdicts


@dataclass(frozen=True)
class SeparatorFamily:
    """Eventually uniform separators S_i for the members of a limit family.

    In section mode S_i judges the i-th section of a set; in whole mode S_i
    judges the whole set.  Each S_i separates the i-th family member from its
    dual, the filter itself being the canonical such separator.
    """

    exceptions: tuple[tuple[int, FilterExpr], ...]
    tail: FilterExpr
    mode: str = "section"

    def spec_at(self, i: int) -> FilterExpr:
        for k, g in self.exceptions:
            if k == i:
                return g
        return self.tail

    def holds(self, i: int, a: SetExpr) -> bool:
        g = self.spec_at(i)
        if self.mode == "section":
            return member(g, section(a, i))
        return member(g, a)

    def stability(self, a: SetExpr) -> int:
        keys = [i for i, _ in self.exceptions]
        if self.mode == "section":
            keys = keys + list(exception_keys(a))
        return max(keys, default=-1) + 1


def section_separators(fam: FilterFamily) -> SeparatorFamily:
    return SeparatorFamily(fam.exceptions, fam.tail, "section")


def whole_separators(fam: FilterFamily) -> SeparatorFamily:
    return SeparatorFamily(fam.exceptions, fam.tail, "whole")


@dataclass(frozen=True)
class SepIn:
    n: int
    threshold: int


@dataclass(frozen=True)
class SepOut:
    pass


@dataclass(frozen=True)
class SepUnknown:
    bound: int


SepVerdict = SepIn | SepOut | SepUnknown


def separator_verdict(
    lim: FilterExpr,
    u: UniversalFamily,
    sep: SeparatorFamily,
    a: SetExpr,
    n_bound: int = 8,
) -> SepVerdict:
    """Place a in or out of the union-of-intersections separator set.

    The set is: some n and m such that for every k past m, some index i in
    Z_n^k has a in S_i.  With an n-independent generator and eventually
    uniform separators the for-all-k tail stabilizes, making the verdict
    exact in both directions.
    """

    def clause(n: int, k: int) -> bool:
        return any(sep.holds(point_key(p)[0], a) for p in u.generator(n, k))

    if u.stability_bound is None:
        return SepUnknown(0)
    ns = [0] if u.n_independent else list(range(n_bound))
    for n in ns:
        k0 = max(u.stability_bound(a, n), sep.stability(a), 0)
        if clause(n, k0):
            last_false = -1
            for k in range(k0):
                if not clause(n, k):
                    last_false = k
            return SepIn(n, last_false + 1)
    if u.n_independent:
        return SepOut()
    return SepUnknown(n_bound)
