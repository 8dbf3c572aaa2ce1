"""Separability predicates on explicit finite hypergraphs.

Edges are searched exhaustively.  Precondition failures raise
:class:`PreconditionError` with a stable ``code`` rather than returning false,
because the predicates are undefined there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .errors import PreconditionError


@dataclass(frozen=True)
class Hypergraph:
    X: frozenset
    Y: tuple[frozenset, ...]

    def __post_init__(self):
        for y in self.Y:
            if not y <= self.X:
                raise ValueError(f"edge {sorted(y, key=repr)} is not a subset of X")

    @classmethod
    def of(cls, X: Iterable[Hashable], Y: Iterable[Iterable[Hashable]]) -> "Hypergraph":
        return cls(frozenset(X), tuple(frozenset(y) for y in Y))

    @classmethod
    def from_json(cls, data: dict) -> tuple["Hypergraph", frozenset]:
        """Hypergraph and Z from ``{"X": [...], "Y": [[...], ...], "Z": [...]}``."""
        unknown = set(data) - {"X", "Y", "Z"}
        if unknown:
            raise ValueError(f"unknown hypergraph fields: {sorted(unknown)}")
        return cls.of(data["X"], data["Y"]), frozenset(data.get("Z", ()))


@dataclass(frozen=True)
class Separation:
    verdict: bool
    witnesses: tuple = field(default=())

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "witnesses": [sorted(w, key=repr) for w in self.witnesses]}


def _require(cond: bool, code: str, message: str) -> None:
    if not cond:
        raise PreconditionError(code, message)


def _atoms(H: Hypergraph, *groups) -> None:
    for g in groups:
        _require(set(g) <= H.X, "not-in-X", f"{sorted(set(g) - H.X, key=repr)} not in X")


def t0_separable(H: Hypergraph, x1, x2, Z=frozenset()) -> Separation:
    """Some edge y with x1 in y u Z and x2 not in y."""
    Z = frozenset(Z)
    _atoms(H, [x1, x2], Z)
    _require(x1 != x2, "equal-elements", "x1 and x2 must differ")
    _require(x2 not in Z, "x2-in-Z", "x2 lies in Z; separation from Z is not defined")
    for y in H.Y:
        if (x1 in y or x1 in Z) and x2 not in y:
            return Separation(True, (y,))
    return Separation(False)


def t2_separable(H: Hypergraph, x1, x2, Z=frozenset()) -> Separation:
    """Edges y1 containing x1 and y2 containing x2 that meet only inside Z."""
    Z = frozenset(Z)
    _atoms(H, [x1, x2], Z)
    _require(x1 != x2, "equal-elements", "x1 and x2 must differ")
    _require(x1 not in Z and x2 not in Z, "element-in-Z", "x1 and x2 must lie outside Z")
    for y1, y2 in itertools.product(H.Y, repeat=2):
        if x1 in y1 and x2 in y2 and not (y1 & y2) - Z:
            return Separation(True, (y1, y2))
    return Separation(False)


def set_t0_separable(H: Hypergraph, X1, X2, Z=frozenset()) -> Separation:
    """Some edge y with X1 inside y u Z and X2 meeting y only inside Z."""
    X1, X2, Z = frozenset(X1), frozenset(X2), frozenset(Z)
    _atoms(H, X1, X2, Z)
    _require(not (X1 & X2) - Z, "overlap-outside-Z", "X1 and X2 meet outside Z")
    _require(not X2 <= Z, "X2-inside-Z", "X2 lies inside Z; separation is vacuous")
    for y in H.Y:
        if X1 <= y | Z and not (X2 & y) - Z:
            return Separation(True, (y,))
    return Separation(False)


def set_t2_separable(H: Hypergraph, X1, X2, Z=frozenset()) -> Separation:
    """Edges y1, y2 meeting only inside Z with X1 inside y1 u Z and X2 inside y2 u Z."""
    X1, X2, Z = frozenset(X1), frozenset(X2), frozenset(Z)
    _atoms(H, X1, X2, Z)
    _require(not (X1 & X2) - Z, "overlap-outside-Z", "X1 and X2 meet outside Z")
    _require(not X1 <= Z, "X1-inside-Z", "X1 lies inside Z; separation is vacuous")
    _require(not X2 <= Z, "X2-inside-Z", "X2 lies inside Z; separation is vacuous")
    for y1, y2 in itertools.product(H.Y, repeat=2):
        if X1 <= y1 | Z and X2 <= y2 | Z and not (y1 & y2) - Z:
            return Separation(True, (y1, y2))
    return Separation(False)
