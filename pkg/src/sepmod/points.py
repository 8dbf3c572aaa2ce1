"""Universe elements of the catalog structures and their literal syntax.

Every point carries an order ``key``: a tuple compared lexicographically.
Keys of points from the same structure are totally ordered, and the keys of
cut positions (see :mod:`sepmod.catalog.base`) live in the same key space.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import PointSyntaxError


@functools.total_ordering
class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __hash__(self):
        return hash(("inf", self.sign))

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"


# sentinels for key tuples; never used as values of a point coordinate
POS = _Infinity(1)
NEG = _Infinity(-1)


def frac(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact rational: {value!r}")


_RATIONAL = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*\Z")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(text)
    if not m or (m.group(2) is not None and int(m.group(2)) == 0):
        raise PointSyntaxError(f"not an exact fraction: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Rat:
    """Element of the dense order (Q, <)."""

    q: Fraction
    key: tuple = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", frac(self.q))
        object.__setattr__(self, "key", (self.q,))
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.key)))

    def __hash__(self):
        return self._hash

    def payload(self) -> str:
        return format_rational(self.q)

    def __str__(self):
        return f"@{{{self.payload()}}}"


@dataclass(frozen=True)
class Tier:
    """Element of the two-tier Ehrenfeucht model: tier 0 lies below tier 1."""

    q: Fraction
    t: int
    key: tuple = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", frac(self.q))
        if self.t not in (0, 1):
            raise ValueError(f"tier must be 0 or 1, got {self.t!r}")
        object.__setattr__(self, "key", (self.t, self.q))
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.key)))

    def __hash__(self):
        return self._hash

    def payload(self) -> str:
        return f"{format_rational(self.q)};{self.t}"

    def __str__(self):
        return f"@{{{self.payload()}}}"


@dataclass(frozen=True)
class Pair:
    """Element of P1 in the fibred example, ordered lexicographically."""

    n: Fraction
    m: Fraction
    key: tuple = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "n", frac(self.n))
        object.__setattr__(self, "m", frac(self.m))
        object.__setattr__(self, "key", (0, self.n, self.m))
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.key)))

    def __hash__(self):
        return self._hash

    def payload(self) -> str:
        return f"({format_rational(self.n)},{format_rational(self.m)})"

    def __str__(self):
        return f"@{{{self.payload()}}}"


@dataclass(frozen=True)
class Single:
    """Element of P2 in the fibred example; P2 lies above all of P1."""

    q: Fraction
    key: tuple = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", frac(self.q))
        object.__setattr__(self, "key", (1, self.q))
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.key)))

    def __hash__(self):
        return self._hash

    def payload(self) -> str:
        return f"{format_rational(self.q)}:P2"

    def __str__(self):
        return f"@{{{self.payload()}}}"


Point = Union[Rat, Tier, Pair, Single]

POINT_TYPES = {"dlo": (Rat,), "ehr": (Tier,), "ex1": (Pair, Single)}

_LITERAL = re.compile(r"@\{([^{}]*)\}")


def parse_payload(payload: str, structure: str) -> Point:
    """Parse the inside of an ``@{...}`` literal for the given structure id."""
    s = payload.strip()
    if structure == "dlo":
        return Rat(parse_rational(s))
    if structure == "ehr":
        parts = s.split(";")
        if len(parts) != 2 or parts[1].strip() not in ("0", "1"):
            raise PointSyntaxError(f"EHR literal must be 'q;t' with t in {{0,1}}: {payload!r}")
        return Tier(parse_rational(parts[0]), int(parts[1]))
    if structure == "ex1":
        if s.startswith("(") and s.endswith(")"):
            parts = s[1:-1].split(",")
            if len(parts) != 2:
                raise PointSyntaxError(f"EX1 pair literal must be '(q1,q2)': {payload!r}")
            return Pair(parse_rational(parts[0]), parse_rational(parts[1]))
        if s.endswith(":P2"):
            return Single(parse_rational(s[:-3]))
        raise PointSyntaxError(f"EX1 literal must be '(q1,q2)' or 'q:P2': {payload!r}")
    raise PointSyntaxError(f"unknown structure {structure!r}")


def parse_point(text: str, structure: str) -> Point:
    m = _LITERAL.fullmatch(text.strip())
    if not m:
        raise PointSyntaxError(f"expected a literal of the form @{{...}}: {text!r}")
    return parse_payload(m.group(1), structure)


def parse_points(text: str, structure: str) -> list[Point]:
    """Parse every ``@{...}`` literal in ``text``; anything else must be blank or commas."""
    points = []
    pos = 0
    for m in _LITERAL.finditer(text):
        if text[pos:m.start()].strip(" \t,"):
            raise PointSyntaxError(f"unexpected text {text[pos:m.start()]!r} in point list")
        points.append(parse_payload(m.group(1), structure))
        pos = m.end()
    if text[pos:].strip(" \t,"):
        raise PointSyntaxError(f"unexpected text {text[pos:]!r} in point list")
    return points


def structure_of(p: Point) -> str:
    for sid, types in POINT_TYPES.items():
        if isinstance(p, types):
            return sid
    raise TypeError(f"not a catalog point: {p!r}")


def sort_points(points) -> list[Point]:
    return sorted(points, key=lambda p: p.key)
