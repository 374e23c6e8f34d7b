"""Command line front end.

Commands read filter, set, and sequence expressions in the package's
source language and print deterministic text.  ``--format structured``
switches stdout to ``key=value`` lines behind a ``format=1`` header so
scripts need not scrape prose.

Exit codes: 0 success (for ``member``, a positive verdict), 1 negative
verdict or failed checks, 2 bad usage or unparsable input, 3 an internal
inconsistency surfaced by the rank engine.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .checks import run_suite, suite_names
from .constructions import (
    ZFamily,
    collapse_limit,
    collapse_pair,
    preimage_grid,
    rank_type_gap_example,
    selector_grid,
    selector_shadow,
    z_family_grid,
)
from .domains import FilterLabError
from .dsl import (
    ParseError,
    filter_to_source,
    parse_filter,
    parse_seq,
    parse_set,
    set_to_source,
)
from .filters import DIVERGENT, dom_of, flim, member
from .game import (
    STRATEGIES_I,
    STRATEGIES_II,
    make_player_i,
    make_player_ii,
    play,
    transcript_lines,
)
from .rank import (
    CertificateError,
    InconsistentBounds,
    bounds_text,
    certificate_text,
    ord_str,
    rank_bounds,
    replay_certificate,
)

DEFAULT_TRUNC = 10_000

CONSTRUCTIONS = ("collapse-pair", "collapse-limit", "zfamily", "type-gap")


class _Output:
    """Collects either prose lines or key=value pairs, then prints once."""

    def __init__(self, structured: bool) -> None:
        self.structured = structured
        self._lines: list[str] = []

    def text(self, line: str) -> None:
        if not self.structured:
            self._lines.append(line)

    def kv(self, key: str, value: object) -> None:
        if self.structured:
            self._lines.append(f"{key}={value}")

    def flush(self) -> None:
        if self.structured:
            print("format=1")
        for line in self._lines:
            print(line)


def _trunc_from(args: argparse.Namespace) -> int:
    if args.trunc is not None:
        return args.trunc
    env = os.environ.get("FILTERLAB_TRUNC")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise FilterLabError(f"FILTERLAB_TRUNC must be an integer, got {env!r}")
        if value < 10:
            raise FilterLabError("FILTERLAB_TRUNC must be at least 10")
        return value
    return DEFAULT_TRUNC


def build_parser() -> argparse.ArgumentParser:
    # shared flags accept either position: before or after the subcommand
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--format",
        choices=("text", "structured"),
        default=argparse.SUPPRESS,
        help="structured prints key=value lines behind a format=1 header",
    )
    shared.add_argument(
        "--trunc",
        type=int,
        default=argparse.SUPPRESS,
        help="truncation bound for shadows and grids "
        "(default: FILTERLAB_TRUNC or 10000)",
    )

    parser = argparse.ArgumentParser(
        prog="filterlab",
        description="filters on countable sets: membership, rank bounds, games",
    )
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--trunc", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "member", parents=[shared], help="decide membership of a set in a filter"
    )
    p.add_argument("filter", help="filter expression")
    p.add_argument("set", help="set expression, resolved over the filter's domain")

    p = sub.add_parser("rank", parents=[shared], help="certified rank bounds for a filter")
    p.add_argument("filter")

    p = sub.add_parser("flim", parents=[shared], help="limit of a sequence along a filter")
    p.add_argument("seq", help="sequence expression")
    p.add_argument("filter")

    p = sub.add_parser(
        "game", parents=[shared], help="run the covering game and print the transcript"
    )
    p.add_argument("filter")
    p.add_argument("--rounds", type=int, default=10)
    p.add_argument("--pI", choices=sorted(STRATEGIES_I), default="full")
    p.add_argument("--pII", choices=sorted(STRATEGIES_II), default="fresh")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser(
        "construct", parents=[shared], help="build and summarize a stock construction"
    )
    p.add_argument("name", choices=CONSTRUCTIONS)
    p.add_argument(
        "--depth", type=int, default=1, help="tower depth for the collapse and line families"
    )

    p = sub.add_parser("check", parents=[shared], help="run a named verification suite")
    p.add_argument("suite", nargs="?", help="suite name, or 'all'; see --list")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--list", action="store_true", help="list suites and exit")
    return parser


# ---------------------------------------------------------------------------
# command bodies


def _cmd_member(args: argparse.Namespace, out: _Output) -> int:
    f = parse_filter(args.filter)
    a = parse_set(args.set, dom_of(f))
    verdict = member(f, a)
    out.text("true" if verdict else "false")
    out.kv("verdict", "true" if verdict else "false")
    out.flush()
    return 0 if verdict else 1


def _cmd_rank(args: argparse.Namespace, out: _Output) -> int:
    f = parse_filter(args.filter)
    bounds, cert = rank_bounds(f)
    if replay_certificate(cert) != bounds:
        raise InconsistentBounds("replayed certificate disagrees with the engine")
    out.text(f"bounds: {bounds_text(bounds)}")
    out.kv("bounds", bounds_text(bounds))
    if bounds.exact is not None:
        out.text(f"exact rank: {ord_str(bounds.exact)}")
        out.kv("exact", ord_str(bounds.exact))
    out.text("certificate:")
    lines = certificate_text(cert).rstrip("\n").split("\n")
    for i, line in enumerate(lines):
        out.text(line)
        out.kv(f"cert.{i}", line)
    out.flush()
    return 0


def _cmd_flim(args: argparse.Namespace, out: _Output) -> int:
    f = parse_filter(args.filter)
    s = parse_seq(args.seq, dom_of(f))
    v = flim(s, f)
    text = "divergent" if v is DIVERGENT else str(v)
    out.text(text)
    out.kv("value", text)
    out.flush()
    return 1 if v is DIVERGENT else 0


def _cmd_game(args: argparse.Namespace, out: _Output) -> int:
    if args.rounds < 1:
        raise FilterLabError("--rounds must be positive")
    f = parse_filter(args.filter)
    t = play(f, make_player_i(args.pI), make_player_ii(args.pII), args.rounds, args.seed)
    lines = transcript_lines(t)
    out.kv("rounds", len(t.rounds))
    out.kv("player_i", t.player_i)
    out.kv("player_ii", t.player_ii)
    out.kv("seed", t.seed)
    for i, line in enumerate(lines):
        out.text(line)
        out.kv(f"round.{i}", line)
    out.flush()
    return 0


def _cmd_construct(args: argparse.Namespace, out: _Output, trunc: int) -> int:
    if args.name == "collapse-pair":
        cp = collapse_pair(args.depth)
        for g in (cp.g0, cp.g1, cp.meet):
            out.text(f"{g.name} bounds {bounds_text(g.bounds)}: {g.provenance}")
            out.kv(f"bounds.{g.name}", bounds_text(g.bounds))
        out.text(f"side-0 line preimages, truncated at {trunc}:")
        for i, line in enumerate(preimage_grid(cp.pair, 0, 4, trunc)):
            out.text("  " + line)
            out.kv(f"preimage0.{i}", line)
        out.text(f"side-1 line preimages, truncated at {trunc}:")
        for i, line in enumerate(preimage_grid(cp.pair, 1, 4, trunc)):
            out.text("  " + line)
            out.kv(f"preimage1.{i}", line)
        out.flush()
        return 0
    if args.name == "collapse-limit":
        cl = collapse_limit(args.depth)
        out.text(f"{cl.limit.name} bounds {bounds_text(cl.limit.bounds)}")
        out.kv("bounds", bounds_text(cl.limit.bounds))
        out.text(f"  {cl.limit.provenance}")
        out.kv("provenance", cl.limit.provenance)
        out.text(f"base: {filter_to_source(cl.base)}")
        out.kv("base", filter_to_source(cl.base))
        label = getattr(cl.h, "label", "") or "splitting set"
        out.text(f"split along: {label} (undecided by the base, both ways)")
        out.kv("split", label)
        for g in (cl.parts.g0, cl.parts.g1):
            out.text(f"{g.name} bounds {bounds_text(g.bounds)}")
            out.kv(f"bounds.{g.name}", bounds_text(g.bounds))
        out.flush()
        return 0
    if args.name == "zfamily":
        zf = ZFamily(args.depth)
        for i, line in enumerate(z_family_grid(zf, 6, 10)):
            out.text(line)
            out.kv(f"line.{i}", line)
        cp = collapse_pair(args.depth)
        shadow = selector_shadow(cp.pair, trunc, i_max=10, j_max=10)
        out.text(f"selector shadow at truncation {trunc}:")
        for i, line in enumerate(selector_grid(shadow)):
            out.text("  " + line)
            out.kv(f"selector.{i}", line)
        out.kv("selector.bound_ok", str(shadow.bound_ok).lower())
        out.flush()
        return 0
    bundle = rank_type_gap_example()
    out.text(f"filter: {filter_to_source(bundle.filt)}")
    out.kv("filter", filter_to_source(bundle.filt))
    out.text(f"bounds {bounds_text(bundle.bounds)}")
    out.kv("bounds", bounds_text(bundle.bounds))
    out.text(f"countable type level: {bundle.ct.level}")
    out.kv("ct", bundle.ct.level)
    witness = getattr(bundle.diag, "witness", None)
    if witness is not None:
        out.text(f"diagonal witness: {set_to_source(witness)}")
        out.kv("witness", set_to_source(witness))
    out.text(bundle.commentary)
    out.kv("commentary", bundle.commentary)
    cert_lines = certificate_text(bundle.certificate).rstrip("\n").split("\n")
    out.text("certificate:")
    for i, line in enumerate(cert_lines):
        out.text(line)
        out.kv(f"cert.{i}", line)
    out.flush()
    return 0


def _cmd_check(args: argparse.Namespace, out: _Output, trunc: int) -> int:
    if args.list:
        for name in suite_names():
            out.text(name)
            out.kv("suite", name)
        out.flush()
        return 0
    if args.suite is None:
        raise FilterLabError("check needs a suite name or --list")
    names = suite_names() if args.suite == "all" else [args.suite]
    passed = total = 0
    idx = 0
    for name in names:
        for r in run_suite(name, trunc=trunc, seed=args.seed):
            word = "PASS" if r.ok else "FAIL"
            tail = f" ({r.detail})" if r.detail else ""
            out.text(f"{word} {name}: {r.name}{tail}")
            out.kv(f"result.{idx}", "pass" if r.ok else "fail")
            out.kv(f"check.{idx}", f"{name}: {r.name}")
            if r.detail:
                out.kv(f"detail.{idx}", r.detail)
            passed += r.ok
            total += 1
            idx += 1
    out.text(f"passed {passed}/{total}")
    out.kv("passed", passed)
    out.kv("total", total)
    out.flush()
    return 0 if passed == total else 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse already printed usage or help; surface its code
        return int(e.code or 0)
    out = _Output(args.format == "structured")
    try:
        trunc = _trunc_from(args)
        if args.command == "member":
            return _cmd_member(args, out)
        if args.command == "rank":
            return _cmd_rank(args, out)
        if args.command == "flim":
            return _cmd_flim(args, out)
        if args.command == "game":
            return _cmd_game(args, out)
        if args.command == "construct":
            return _cmd_construct(args, out, trunc)
        return _cmd_check(args, out, trunc)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (InconsistentBounds, CertificateError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except FilterLabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
