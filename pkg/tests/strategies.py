"""Hypothesis strategies for points and formulas."""

from fractions import Fraction

from hypothesis import strategies as st

from sepmod.logic import (
    SIGNATURES, And, Apply, Atom, Const, Exists, Forall, Implies, Not, Or, Param, PredicateAtom,
    Var,
)
from sepmod.points import Pair, Rat, Single, Tier

rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))


def points(sid: str):
    if sid == "dlo":
        return st.builds(Rat, rationals)
    if sid == "ehr":
        return st.builds(Tier, rationals, st.sampled_from((0, 1)))
    return st.one_of(st.builds(Pair, rationals, rationals), st.builds(Single, rationals))


def terms(sid: str, names=("x", "y", "z")):
    base = [st.sampled_from(names).map(Var), points(sid).map(Param)]
    if sid == "ehr":
        base.append(st.integers(0, 5).map(Const))
    t = st.one_of(*base)
    if sid == "ex1":
        t = st.one_of(t, t.map(lambda a: Apply("f", (a,))))
    return t


def formulas(sid: str, names=("x", "y", "z")):
    sig = SIGNATURES[sid]
    atom = st.builds(lambda r, a, b: Atom(r, (a, b)), st.sampled_from(("<", "=")),
                     terms(sid, names), terms(sid, names))
    if sig.predicates:
        atom = st.one_of(atom, st.builds(PredicateAtom, st.sampled_from(sig.predicates),
                                         terms(sid, names)))

    def extend(inner):
        return st.one_of(
            inner.map(Not),
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
            st.builds(Implies, inner, inner),
            st.builds(Exists, st.sampled_from(names), inner),
            st.builds(Forall, st.sampled_from(names), inner),
        )

    return st.recursive(atom, extend, max_leaves=8)
