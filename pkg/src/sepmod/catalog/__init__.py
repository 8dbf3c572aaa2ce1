"""Catalog of computable ordered structures.

Each entry is a singleton :class:`Structure`; look them up by id.
"""

from __future__ import annotations

import random
from typing import Sequence

from ..logic import Formula
from ..points import Point
from .automorphisms import Automorphism
from .base import Component, DefinableSet, Flags, Gap, Structure, TypeDescriptor
from .structures import DLO, EHR, EX1, P1_END, fibre_inf, fibre_sup

_REGISTRY = {"dlo": DLO(), "ehr": EHR(), "ex1": EX1()}

STRUCTURE_IDS = tuple(_REGISTRY)


def get_structure(sid) -> Structure:
    if isinstance(sid, Structure):
        return sid
    try:
        return _REGISTRY[str(sid).lower()]
    except KeyError:
        raise ValueError(f"unknown structure {sid!r}; expected one of {', '.join(_REGISTRY)}")


def definable_set(S, phi: Formula, params=None, var: str | None = None) -> DefinableSet:
    return get_structure(S).definable_set(phi, params, var)


def eval_formula(S, phi: Formula, params=None) -> bool:
    return get_structure(S).eval_formula(phi, params)


def sample_automorphism(S, seed: int, fixed: Sequence[Point] = ()) -> Automorphism:
    return get_structure(S).sample_automorphism(seed, fixed)


def list_isolated_1types(S, prefix: int = 3) -> list[TypeDescriptor]:
    return get_structure(S).list_isolated_1types(prefix)


def realize(S, t: TypeDescriptor) -> Point:
    return get_structure(S).realize(t)


def check_automorphism(S, sigma: Automorphism, points: Sequence[Point]) -> list[str]:
    """Violations of order, constant, predicate and f preservation on ``points``.

    An empty list means every check passed.
    """
    S = get_structure(S)
    bad = []
    img = {p: sigma(p) for p in points}
    for p in img:
        for q in img:
            if (p.key < q.key) != (img[p].key < img[q].key):
                bad.append(f"order not preserved on {p}, {q}")
    for name, arity in S.signature.relations:
        if arity == 1:
            for p in img:
                if S.predicate(name, p) != S.predicate(name, img[p]):
                    bad.append(f"{name} not preserved at {p}")
    for name, _ in S.signature.functions:
        for p in img:
            image = S.apply(name, p)
            if (None if image is None else sigma(image)) != S.apply(name, img[p]):
                bad.append(f"{name} does not commute with the map at {p}")
    if S.signature.constant_family:
        for i in range(16):
            c = S.constant(i)
            if sigma(c) != c:
                bad.append(f"constant c{i} moved")
    return bad


def sample_points(S, rng: random.Random, n: int) -> list[Point]:
    """``n`` points drawn from the structure's grid at a random refinement level."""
    S = get_structure(S)
    grid = S.grid_points(rng.randint(0, 2))
    return [rng.choice(grid) for _ in range(n)]


__all__ = [
    "Automorphism", "Component", "DefinableSet", "Flags", "Gap", "P1_END", "STRUCTURE_IDS",
    "Structure", "TypeDescriptor", "check_automorphism", "definable_set", "eval_formula",
    "fibre_inf", "fibre_sup", "get_structure", "list_isolated_1types", "realize",
    "sample_automorphism", "sample_points",
]
