"""Brute-force evaluator used as an independent check on quantifier elimination.

Quantifiers range over finite grids that get finer and wider at each nesting
level.  With parameters on the level-0 grid, every orbit cell over the values
in scope contains a grid point of the next level, so on these inputs the
grid evaluation is exact.  Nothing here uses the package's order keys,
cells or compiled evaluator; only the formula AST and point classes are shared.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sepmod.logic import (
    And, Apply, Atom, Const, Exists, Forall, Implies, Not, Or, Param, PredicateAtom, Var,
)
from sepmod.points import Pair, Rat, Single, Tier

# (spacing, half-width) per nesting level
DLO_LEVELS = [(Fraction(1, 2), 4), (Fraction(1, 4), 5), (Fraction(1, 8), 6)]
EX1_LEVELS = [(Fraction(1), 1), (Fraction(1, 2), 2), (Fraction(1, 4), 3)]


def _values(spacing: Fraction, half: int) -> list[Fraction]:
    n = int(half / spacing)
    return [k * spacing for k in range(-n, n + 1)]


@lru_cache(maxsize=None)
def grid(structure: str, level: int) -> tuple:
    if structure == "dlo":
        return tuple(Rat(v) for v in _values(*DLO_LEVELS[level]))
    if structure == "ehr":
        vals = _values(*DLO_LEVELS[level])
        return tuple(Tier(v, t) for t in (0, 1) for v in vals)
    vals = _values(*EX1_LEVELS[level])
    return tuple(Pair(a, b) for a in vals for b in vals) + tuple(Single(v) for v in vals)


def less(p, q) -> bool:
    """The order of each structure, written out case by case."""
    if isinstance(p, Rat):
        return p.q < q.q
    if isinstance(p, Tier):
        if p.t != q.t:
            return p.t < q.t
        return p.q < q.q
    if isinstance(p, Single):
        return isinstance(q, Single) and p.q < q.q
    if isinstance(q, Single):
        return True
    return (p.n, p.m) < (q.n, q.m)


def _term(t, env, structure):
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Param):
        return t.point
    if isinstance(t, Const):
        return Tier(t.index, 0)
    if isinstance(t, Apply):
        v = _term(t.args[0], env, structure)
        return Single(v.n) if isinstance(v, Pair) else None
    raise TypeError(t)


def evaluate(structure: str, phi, env: dict, level: int = 1) -> bool:
    """Truth of ``phi`` under ``env``; quantifiers at nesting n use grid level ``level + n - 1``."""
    if isinstance(phi, Atom):
        a, b = (_term(t, env, structure) for t in phi.args)
        if a is None or b is None:
            return False
        return less(a, b) if phi.rel == "<" else a == b
    if isinstance(phi, PredicateAtom):
        v = _term(phi.term, env, structure)
        if v is None:
            return False
        return isinstance(v, Pair) if phi.pred == "P1" else isinstance(v, Single)
    if isinstance(phi, Not):
        return not evaluate(structure, phi.body, env, level)
    if isinstance(phi, And):
        return evaluate(structure, phi.left, env, level) and evaluate(structure, phi.right, env, level)
    if isinstance(phi, Or):
        return evaluate(structure, phi.left, env, level) or evaluate(structure, phi.right, env, level)
    if isinstance(phi, Implies):
        return (not evaluate(structure, phi.left, env, level)) or evaluate(
            structure, phi.right, env, level)
    if isinstance(phi, (Exists, Forall)):
        pts = grid(structure, level)
        results = (evaluate(structure, phi.body, {**env, phi.var: p}, level + 1) for p in pts)
        return any(results) if isinstance(phi, Exists) else all(results)
    raise TypeError(phi)


def solutions(structure: str, phi, points) -> set:
    """The points of ``points`` satisfying the one-variable formula ``phi(x)``."""
    return {p for p in points if evaluate(structure, phi, {"x": p})}
