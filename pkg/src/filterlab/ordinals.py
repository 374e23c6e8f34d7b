"""Ordinals below w^w in Cantor normal form.

An ordinal is a sum  w^e1*c1 + ... + w^ek*ck  with strictly decreasing
natural exponents and positive integer coefficients.  Addition absorbs on
the left: lower terms of the left operand vanish under a higher right head.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domains import FilterLabError


class OrdinalError(FilterLabError):
    pass


@dataclass(frozen=True)
class Ordinal:
    """terms = ((exponent, coefficient), ...), exponents strictly decreasing."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = None
        for e, c in self.terms:
            if e < 0 or c < 1:
                raise OrdinalError(f"bad CNF term w^{e}*{c}")
            if last is not None and e >= last:
                raise OrdinalError("CNF exponents must strictly decrease")
            last = e

    def __str__(self) -> str:
        return ord_str(self)


ZERO = Ordinal(())
ONE = Ordinal(((0, 1),))
OMEGA = Ordinal(((1, 1),))


def ord_of_int(n: int) -> Ordinal:
    if n < 0:
        raise OrdinalError("ordinals are nonnegative")
    return Ordinal(((0, n),)) if n else ZERO


def omega_pow(e: int, c: int = 1) -> Ordinal:
    return Ordinal(((e, c),)) if c else ZERO


def is_finite_ord(a: Ordinal) -> bool:
    return all(e == 0 for e, _ in a.terms)


def as_int(a: Ordinal) -> int:
    if not is_finite_ord(a):
        raise OrdinalError(f"{a} is infinite")
    return a.terms[0][1] if a.terms else 0


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    head = b.terms[0][0]
    kept = [(e, c) for e, c in a.terms if e > head]
    merged = list(b.terms)
    for e, c in a.terms:
        if e == head:
            merged[0] = (head, c + merged[0][1])
    return Ordinal(tuple(kept) + tuple(merged))


def ord_cmp(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea != eb:
            return 1 if ea > eb else -1
        if ca != cb:
            return 1 if ca > cb else -1
    if len(a.terms) != len(b.terms):
        return 1 if len(a.terms) > len(b.terms) else -1
    return 0


def ord_le(a: Ordinal, b: Ordinal) -> bool:
    return ord_cmp(a, b) <= 0


def ord_lt(a: Ordinal, b: Ordinal) -> bool:
    return ord_cmp(a, b) < 0


def ord_max(a: Ordinal, b: Ordinal) -> Ordinal:
    return a if ord_cmp(a, b) >= 0 else b


def ord_min(a: Ordinal, b: Ordinal) -> Ordinal:
    return a if ord_cmp(a, b) <= 0 else b


def ord_succ(a: Ordinal) -> Ordinal:
    return ord_add(a, ONE)


def ord_str(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append("w" if c == 1 else f"w*{c}")
        else:
            parts.append(f"w^{e}" if c == 1 else f"w^{e}*{c}")
    return "+".join(parts)


def parse_ordinal(text: str) -> Ordinal:
    """Inverse of ord_str, tolerant of whitespace around + * ^."""
    s = text.strip()
    if s == "0":
        return ZERO
    terms: list[tuple[int, int]] = []
    for chunk in s.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise OrdinalError(f"empty term in {text!r}")
        if chunk[0] == "w":
            rest = chunk[1:].strip()
            e = 1
            if rest.startswith("^"):
                rest = rest[1:].strip()
                digits = ""
                while rest and rest[0].isdigit():
                    digits, rest = digits + rest[0], rest[1:]
                if not digits:
                    raise OrdinalError(f"missing exponent in {text!r}")
                e = int(digits)
                rest = rest.strip()
            c = 1
            if rest.startswith("*"):
                c = _parse_nat(rest[1:], text)
            elif rest:
                raise OrdinalError(f"trailing junk {rest!r} in {text!r}")
        else:
            e, c = 0, _parse_nat(chunk, text)
        terms.append((e, c))
    out = ZERO
    for e, c in terms:
        out = ord_add(out, omega_pow(e, c))
    return out


def _parse_nat(s: str, full: str) -> int:
    s = s.strip()
    if not s.isdigit():
        raise OrdinalError(f"expected a number, got {s!r} in {full!r}")
    return int(s)
