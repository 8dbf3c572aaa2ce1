"""Definable and algebraic closure of finite parameter sets.

Closures are computed structurally: the parameters themselves, every
constant (EHR), and f-images of P1 parameters (EX1).  In all three catalog
structures that is the whole of acl, and acl = dcl because the order
distinguishes the points of any finite definable set.  The property tests
cross-check this against quantifier elimination and automorphism sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .catalog import get_structure
from .catalog.base import Structure
from .logic import Apply, Const, Formula, Param, Var, eq, format_formula, parse_formula
from .points import Point, parse_point, sort_points

X = Var("x")


@dataclass(frozen=True)
class ClosureElement:
    """A closure point with a formula over the base that it satisfies.

    The formula's solution set has at most ``bound`` points (1 for dcl).
    """

    point: Point
    formula: Formula
    bound: int = 1

    def to_json(self) -> dict:
        return {"point": str(self.point), "formula": format_formula(self.formula),
                "bound": self.bound}


@dataclass(frozen=True)
class ClosureSet:
    structure: str
    kind: str
    base: tuple[Point, ...]
    elements: tuple[ClosureElement, ...]
    intensional_constants: bool = False

    def __post_init__(self):
        if self.kind not in ("dcl", "acl"):
            raise ValueError(f"closure kind must be dcl or acl, not {self.kind!r}")
        object.__setattr__(self, "_listed", {e.point: e for e in self.elements})

    def __contains__(self, p: Point) -> bool:
        if p in self._listed:
            return True
        return self.intensional_constants and get_structure(self.structure).is_constant(p)

    def listed(self) -> list[Point]:
        return [e.point for e in self.elements]

    def provenance(self, p: Point) -> ClosureElement | None:
        if p in self._listed:
            return self._listed[p]
        S = get_structure(self.structure)
        if self.intensional_constants and S.is_constant(p):
            return ClosureElement(p, eq(X, Const(S.constant_index(p))))
        return None

    def describe(self) -> str:
        parts = [str(p) for p in self.listed()]
        if self.intensional_constants:
            parts.append("all c_i")
        return "{" + ", ".join(parts) + "}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "structure": self.structure,
            "base": [str(p) for p in self.base],
            "elements": [e.to_json() for e in self.elements],
            "intensional_constants": self.intensional_constants,
        }


def closure_from_json(data: dict) -> ClosureSet:
    S = get_structure(data["structure"])
    elements = tuple(
        ClosureElement(parse_point(e["point"], S.id), parse_formula(e["formula"], S.signature),
                       int(e["bound"]))
        for e in data["elements"])
    return ClosureSet(S.id, data["kind"], tuple(parse_point(p, S.id) for p in data["base"]),
                      elements, bool(data["intensional_constants"]))


def _closure(S, A: Iterable[Point], kind: str) -> ClosureSet:
    S = get_structure(S)
    base = tuple(sort_points(set(A)))
    S.require(base)
    found: dict = {}
    for a in base:
        found[a] = ClosureElement(a, eq(X, Param(a)))
    for fn, _ in S.signature.functions:
        for a in base:
            image = S.apply(fn, a)
            if image is not None and image not in found:
                found[image] = ClosureElement(image, eq(X, Apply(fn, (Param(a),))))
    elements = tuple(found[p] for p in sort_points(found))
    return ClosureSet(S.id, kind, base, elements, bool(S.signature.constant_family))


def dcl(S, A: Iterable[Point]) -> ClosureSet:
    return _closure(S, A, "dcl")


def acl(S, A: Iterable[Point]) -> ClosureSet:
    return _closure(S, A, "acl")


def in_closure(C: ClosureSet, p: Point) -> bool:
    return p in C


@dataclass(frozen=True)
class Relativizer:
    """The set Z of relative separability.

    Either a literal finite set (``closed`` false) or acl of a finite set.
    """

    structure: str
    points: tuple[Point, ...] = ()
    closed: bool = False
    label: str = "empty"

    def __post_init__(self):
        object.__setattr__(self, "_closure",
                           acl(self.structure, self.points) if self.closed else None)

    def __contains__(self, p: Point) -> bool:
        if self.closed:
            return p in self._closure
        return p in self.points

    def listed(self) -> list[Point]:
        return self._closure.listed() if self.closed else list(self.points)

    @property
    def has_constants(self) -> bool:
        return self.closed and self._closure.intensional_constants

    def describe(self) -> str:
        return self._closure.describe() if self.closed else (
            "{" + ", ".join(str(p) for p in self.points) + "}")

    def to_json(self) -> dict:
        return {"label": self.label, "points": [str(p) for p in self.points],
                "closed": self.closed}

    @classmethod
    def from_json(cls, structure: str, data: dict) -> "Relativizer":
        pts = tuple(parse_point(p, structure) for p in data["points"])
        return cls(structure, pts, bool(data["closed"]), data["label"])


def relativizer(S, value) -> Relativizer:
    """Build Z from ``None``/"empty", "acl-empty", "dcl-empty" or a list of points (acl-closed)."""
    sid = get_structure(S).id
    if value is None or value == "empty":
        return Relativizer(sid)
    if value in ("acl-empty", "dcl-empty"):
        return Relativizer(sid, (), True, value)
    if isinstance(value, Relativizer):
        return value
    pts = tuple(sort_points(set(value)))
    get_structure(S).require(pts)
    return Relativizer(sid, pts, True, "acl(" + ", ".join(str(p) for p in pts) + ")")


def closure_with(S, A: Iterable[Point], Z: Relativizer) -> ClosureSet:
    """acl(A u Z); since Z is finite or acl-closed this is acl(A u Z.points)."""
    return acl(S, list(A) + list(Z.points))


def constant_witnesses(S: Structure, exclude, count: int = 3) -> list[Point]:
    """The first ``count`` constants not in ``exclude``."""
    if getattr(exclude, "has_constants", False):
        return []
    out = []
    i = 0
    # exclude is finite unless it carries the constants, so few probes suffice
    while len(out) < count and i < count + 64:
        c = S.constant(i)
        if c not in exclude:
            out.append(c)
        i += 1
    return out


def common_elements(C1: ClosureSet, C2: ClosureSet, Z=()) -> list[ClosureElement]:
    """Elements of (C1 n C2) \\ Z: the listed overlap plus sample constants when both carry them."""
    out = [C1.provenance(p) for p in C1.listed() if p in C2 and p not in Z]
    if C1.intensional_constants and C2.intensional_constants:
        S = get_structure(C1.structure)
        listed = set(C1.listed())
        for c in constant_witnesses(S, Z, 1):
            if c not in listed:
                out.append(C1.provenance(c))
    return out


@dataclass(frozen=True)
class ExchangeResult:
    holds: bool
    witness: tuple[Point, Point] | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {"holds": self.holds,
                "witness": None if self.witness is None else [str(p) for p in self.witness],
                "reason": self.reason}


def exchange_check(S, a: Point, b: Point) -> ExchangeResult:
    """Test ``b in acl(a) and b notin acl(0) => a in acl(b)`` for one pair."""
    S = get_structure(S)
    if b not in acl(S, [a]):
        return ExchangeResult(True, reason="vacuous: b not in acl(a)")
    if b in acl(S, []):
        return ExchangeResult(True, reason="vacuous: b in acl(0)")
    if a in acl(S, [b]):
        return ExchangeResult(True, reason="a in acl(b)")
    return ExchangeResult(False, (a, b), "b in acl(a) \\ acl(0) but a not in acl(b)")
