"""Formula supplies for the staged builder and the Tarski-Vaught sampler.

Templates are one-free-variable formulas in ``x`` whose parameters are the
slot variables ``p0, p1, ...``.  A hand-picked prefix covers the patterns that
matter for each structure (intervals, fibres, constant blocks); past it the
supply continues with seeded random formulas, so every index is defined.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import Sequence

from .logic import (
    And, Apply, Atom, Const, Exists, Forall, Formula, Implies, Not, Or, Param, PredicateAtom,
    Signature, Var, eq, free_variables, parse_formula, quantifier_depth,
)
from .points import Point

SLOTS = ("p0", "p1")

_COMMON = [
    "x = p0",
    "p0 < x",
    "x < p0",
    "p0 < x and x < p1",
    "not (x = p0) and not (x = p1)",
    "exists y (x < y and y < p0)",
    "exists y (p0 < y and y < x)",
]

_EXTRA = {
    "dlo": [],
    "ehr": [
        "x < c0",
        "c0 < x and x < c1",
        "c1 < x and x < c2",
        "p0 < x and x < c0",
        "c0 < x and x < p0",
        "c2 < x and p0 < x",
        "x = c1",
    ],
    "ex1": [
        "f(x) = p0",
        "P1(x)",
        "P2(x)",
        "p0 < x and f(x) = f(p0)",
        "x < p0 and f(x) = f(p0)",
        "P2(x) and p0 < x",
        "P2(x) and x < p0",
        "P1(x) and p0 < x and x < p1",
        "exists y (f(y) = x)",
        "exists y (p0 < y and f(y) = x)",
        "P1(x) and not (f(x) = f(p0))",
    ],
}


@lru_cache(maxsize=None)
def curated_templates(sig: Signature) -> tuple[Formula, ...]:
    texts = _COMMON + _EXTRA[sig.name]
    return tuple(parse_formula(t, sig) for t in texts)


def slot_count(phi: Formula) -> int:
    free = free_variables(phi)
    return sum(1 for s in SLOTS if s in free)


def template(index: int, sig: Signature, max_depth: int = 2) -> Formula:
    """The ``index``-th template; total, deterministic and fair in ``index``."""
    base = curated_templates(sig)
    if index < len(base):
        return base[index]
    rng = random.Random(index * 7919 + len(sig.name))
    phi = random_formula(rng, sig, ["x", "x", *SLOTS], depth=rng.randint(0, max_depth - 1))
    if "x" not in free_variables(phi):
        phi = And(phi, eq(Var("x"), Var("x")))
    return phi


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    t = w * (w + 1) // 2
    m = z - t
    return w - m, m


# -- random formulas --------------------------------------------------------

def _random_term(rng: random.Random, sig: Signature, names: Sequence, consts: int):
    choices = list(names)
    if sig.constant_family and consts:
        choices += [Const(rng.randrange(consts))]
    t = rng.choice(choices)
    if isinstance(t, str):
        t = Var(t)
    elif not isinstance(t, Const) and not isinstance(t, Var):
        t = Param(t)
    if sig.functions and rng.random() < 0.3:
        t = Apply("f", (t,))
    return t


def _random_atom(rng, sig, names, consts):
    preds = sig.predicates
    if preds and rng.random() < 0.25:
        return PredicateAtom(rng.choice(preds), _random_term(rng, sig, names, consts))
    rel = "<" if rng.random() < 0.6 else "="
    return Atom(rel, (_random_term(rng, sig, names, consts), _random_term(rng, sig, names, consts)))


def random_formula(rng: random.Random, sig: Signature, names: Sequence, depth: int = 1,
                   consts: int = 4, budget: int = 4) -> Formula:
    """A random formula over ``names`` (variable names or points) of quantifier depth <= ``depth``."""
    roll = rng.random()
    if budget <= 0 or roll < 0.3:
        return _random_atom(rng, sig, names, consts)
    if roll < 0.4:
        return Not(random_formula(rng, sig, names, depth, consts, budget - 1))
    if roll < 0.75 or depth == 0:
        cls = rng.choice((And, And, Or, Implies))
        return cls(random_formula(rng, sig, names, depth, consts, budget - 2),
                   random_formula(rng, sig, names, depth, consts, budget - 2))
    var = f"y{depth}"
    body = random_formula(rng, sig, [*names, var], depth - 1, consts, budget - 1)
    return (Exists if rng.random() < 0.6 else Forall)(var, body)


def random_query_formula(rng: random.Random, sig: Signature, params: Sequence[Point],
                         depth: int) -> Formula:
    """A formula with free variable ``x`` only, parameters from ``params``, depth <= ``depth``."""
    phi = random_formula(rng, sig, ["x", "x", *params], depth=depth)
    if "x" not in free_variables(phi):
        phi = And(phi, eq(Var("x"), Var("x")))
    assert quantifier_depth(phi) <= depth and free_variables(phi) == ("x",)
    return phi


__all__ = [
    "SLOTS", "cantor_unpair", "curated_templates", "random_formula", "random_query_formula",
    "slot_count", "template",
]
