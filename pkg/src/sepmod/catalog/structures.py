"""The three catalog structures: DLO, the Ehrenfeucht-type EHR and the fibred EX1."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from ..logic import (
    DLO_SIG, EHR_SIG, EX1_SIG, Const, PredicateAtom, Var, eq, lt,
)
from ..points import NEG, POS, Pair, Point, Rat, Single, Tier
from .automorphisms import dlo_automorphism, ehr_automorphism, ex1_automorphism
from .base import (
    Component, Flags, Gap, Structure, TypeDescriptor, plain_cells, rationals_between,
    ray_offsets, roundrobin, some_rational_between,
)

X = Var("x")


class DLO(Structure):
    id = "dlo"
    signature = DLO_SIG
    flags = Flags(omega_categorical=True, quite_o_minimal=True, almost_omega_categorical=True,
                  exchange_principle=True, dcl_equals_acl=True)
    saturation_note = ("(Q,<) is omega-saturated: a type over finitely many parameters is a "
                       "cut between consecutive parameters or a ray, and every such cut is "
                       "realized by a rational.")
    orthogonality_note = "single non-algebraic 1-type over the empty set; no orthogonality pairs."

    def _compute_cells(self, anchors):
        def between(lo, hi):
            return Rat(some_rational_between(lo and lo.q, hi and hi.q))

        return plain_cells(anchors, between)

    def interior(self, comp: Component) -> Iterator[Point]:
        lo = None if comp.lower is None else comp.lower.q
        hi = None if comp.upper is None else comp.upper.q
        return (Rat(q) for q in rationals_between(lo, hi))

    def sample_automorphism(self, seed: int, fixed: Sequence[Point] = ()):
        return dlo_automorphism(seed, fixed)

    def list_isolated_1types(self, prefix: int = 3) -> list[TypeDescriptor]:
        return [TypeDescriptor("x = x", (eq(X, X),), True, Rat(0))]

    def grid_points(self, level: int = 0) -> list[Point]:
        step = Fraction(1, 2 ** (level + 1))
        n = int(4 / step)
        return [Rat(k * step) for k in range(-n, n + 1)]


class EHR(Structure):
    """DLO with constants c_i = (i, 0), i in N, and a tier-1 copy of Q above them all."""

    id = "ehr"
    signature = EHR_SIG
    flags = Flags(omega_categorical=False, quite_o_minimal=True, almost_omega_categorical=True,
                  exchange_principle=True, dcl_equals_acl=True)
    saturation_note = ("Two-tier model Q x {0} + Q x {1} with c_i = (i, 0).  Every cut over "
                       "finitely many parameters and constants is realized, including the "
                       "limit type above all constants (by tier 1); spot-checked by "
                       "sampled cut realization, not proven.")
    orthogonality_note = ("every non-algebraic 1-type is a convex block between constants or "
                          "the limit type; no definable bijections between distinct blocks.")

    def constant(self, index: int) -> Point:
        if index < 0:
            raise ValueError("constant indices are natural numbers")
        return Tier(Fraction(index), 0)

    def is_constant(self, p: Point) -> bool:
        return p.t == 0 and p.q.denominator == 1 and p.q >= 0

    def constant_index(self, p: Point) -> int | None:
        return int(p.q) if self.is_constant(p) else None

    def _compute_cells(self, anchors):
        def between(lo, hi):
            if lo is None and hi is None:
                return Tier(Fraction(1, 2), 0)
            if lo is None:
                return Tier(hi.q - 1, hi.t)
            if hi is None:
                return Tier(lo.q + 1, lo.t)
            if lo.t == hi.t:
                return Tier((lo.q + hi.q) / 2, lo.t)
            return Tier(lo.q + 1, 0)

        return plain_cells(anchors, between)

    def interior(self, comp: Component) -> Iterator[Point]:
        lo, hi = comp.lower, comp.upper
        if lo is not None and hi is not None and lo.t == hi.t:
            return (Tier(q, lo.t) for q in rationals_between(lo.q, hi.q))
        parts = []
        if hi is None or hi.t == 1:
            parts.append(Tier(q, 1) for q in rationals_between(
                lo.q if lo is not None and lo.t == 1 else None, None if hi is None else hi.q))
        if lo is None or lo.t == 0:
            parts.append(Tier(q, 0) for q in rationals_between(
                None if lo is None else lo.q, hi.q if hi is not None and hi.t == 0 else None))
        return roundrobin(*parts)

    def satisfies_schema(self, schema, p):
        if schema == "above-all-constants":
            return p.t == 1
        return super().satisfies_schema(schema, p)

    def sample_automorphism(self, seed: int, fixed: Sequence[Point] = ()):
        return ehr_automorphism(seed, fixed)

    def list_isolated_1types(self, prefix: int = 3) -> list[TypeDescriptor]:
        """Isolated types up to constant index ``prefix``, then the non-isolated limit type.

        The full family is infinite; callers extend ``prefix`` as needed.
        """
        types = [TypeDescriptor("x < c0", (lt(X, Const(0)),), True, Tier(-1, 0))]
        for i in range(prefix):
            types.append(TypeDescriptor(f"x = c{i}", (eq(X, Const(i)),), True, Tier(i, 0)))
            types.append(TypeDescriptor(
                f"c{i} < x < c{i + 1}", (lt(Const(i), X), lt(X, Const(i + 1))), True,
                Tier(Fraction(2 * i + 1, 2), 0)))
        types.append(TypeDescriptor("c_i < x for all i", (), False, Tier(0, 1),
                                    schema="above-all-constants"))
        return types

    def grid_points(self, level: int = 0) -> list[Point]:
        step = Fraction(1, 2 ** (level + 1))
        n = int(4 / step)
        return [Tier(k * step, t) for t in (0, 1) for k in range(-n, n + 1)]


FIBRE_LABEL = "f^-1"


def fibre_inf(n: Fraction) -> Gap:
    return Gap((0, n, NEG), f"inf {FIBRE_LABEL}({n})")


def fibre_sup(n: Fraction) -> Gap:
    return Gap((0, n, POS), f"sup {FIBRE_LABEL}({n})")


P1_END = Gap((0, POS), "sup P1")


def _base(b) -> Fraction | None:
    """Base value (the f-image) of a P1-side bound; None for the end of P1."""
    if isinstance(b, Pair):
        return b.n
    if isinstance(b, Gap) and len(b.key) == 3:
        return b.key[1]
    return None


class EX1(Structure):
    """P1 = Q x Q (lexicographic) below P2 = Q, with f((n, m)) = n.

    f is undefined on P2; ``apply`` returns None there and any atom with an
    undefined term is false.
    """

    id = "ex1"
    signature = EX1_SIG
    flags = Flags(omega_categorical=True, quite_o_minimal=False, almost_omega_categorical=True,
                  exchange_principle=False, dcl_equals_acl=True)
    saturation_note = ("Countable omega-categorical structure, hence omega-saturated: every "
                       "type over finitely many parameters is realized.")
    orthogonality_note = ("P1 and P2 are not weakly orthogonal (f links them) yet admit no "
                          "definable bijection, so the structure is not quite o-minimal.")

    def apply(self, fn: str, p: Point) -> Point:
        if fn != "f":
            return super().apply(fn, p)
        return Single(p.n) if isinstance(p, Pair) else None

    def predicate(self, name: str, p: Point) -> bool:
        if name == "P1":
            return isinstance(p, Pair)
        if name == "P2":
            return isinstance(p, Single)
        return super().predicate(name, p)

    def _compute_cells(self, anchors):
        bases = sorted({p.n if isinstance(p, Pair) else p.q for p in anchors})
        fibres: dict = {}
        for p in anchors:
            if isinstance(p, Pair):
                fibres.setdefault(p.n, []).append(p.m)
        cells = []
        prev = None
        for v in bases:
            lower = None if prev is None else fibre_sup(prev)
            cells.append((Component(lower, fibre_inf(v)), Pair(some_rational_between(prev, v), 0)))
            bound, prev_m = fibre_inf(v), None
            for w in sorted(fibres.get(v, ())):
                cells.append((Component(bound, Pair(v, w)), Pair(v, some_rational_between(prev_m, w))))
                cells.append((Component.point(Pair(v, w)), Pair(v, w)))
                bound, prev_m = Pair(v, w), w
            cells.append((Component(bound, fibre_sup(v)), Pair(v, some_rational_between(prev_m, None))))
            prev = v
        lower = None if prev is None else fibre_sup(prev)
        cells.append((Component(lower, P1_END), Pair(some_rational_between(prev, None), 0)))
        bound, prev = P1_END, None
        for v in bases:
            cells.append((Component(bound, Single(v)), Single(some_rational_between(prev, v))))
            cells.append((Component.point(Single(v)), Single(v)))
            bound, prev = Single(v), v
        cells.append((Component(bound, None), Single(some_rational_between(prev, None))))
        return tuple(cells)

    def interior(self, comp: Component) -> Iterator[Point]:
        lo, hi = comp.lower, comp.upper
        parts = []
        if lo is None or (lo.key[0] == 0 and lo != P1_END):
            p1_hi = hi if hi is not None and hi.key[0] == 0 else P1_END
            parts.append(self._p1_interior(lo, p1_hi))
        if hi is None or hi.key[0] == 1:
            q_lo = lo.q if isinstance(lo, Single) else None
            q_hi = hi.q if isinstance(hi, Single) else None
            parts.append(Single(q) for q in rationals_between(q_lo, q_hi))
        return roundrobin(*parts)

    def _p1_interior(self, lo, hi) -> Iterator[Point]:
        lo_n, hi_n = _base(lo), _base(hi)
        same_fibre = (lo_n is not None and lo_n == hi_n
                      and not (isinstance(lo, Gap) and lo.key[2] == POS)
                      and not (isinstance(hi, Gap) and hi.key[2] == NEG))
        if same_fibre:
            m_lo = lo.m if isinstance(lo, Pair) else None
            m_hi = hi.m if isinstance(hi, Pair) else None
            return (Pair(lo_n, m) for m in rationals_between(m_lo, m_hi))
        parts = [(Pair(b, 0) for b in rationals_between(lo_n, hi_n))]
        if isinstance(lo, Pair):
            parts.append(Pair(lo.n, lo.m + r) for r in ray_offsets())
        elif isinstance(lo, Gap) and lo.key[2] == NEG:
            parts.append(Pair(lo_n, m) for m in rationals_between(None, None))
        if isinstance(hi, Pair):
            parts.append(Pair(hi.n, hi.m - r) for r in ray_offsets())
        elif isinstance(hi, Gap) and len(hi.key) == 3 and hi.key[2] == POS:
            parts.append(Pair(hi_n, m) for m in rationals_between(None, None))
        return roundrobin(*parts)

    def sample_automorphism(self, seed: int, fixed: Sequence[Point] = ()):
        return ex1_automorphism(seed, fixed)

    def list_isolated_1types(self, prefix: int = 3) -> list[TypeDescriptor]:
        return [
            TypeDescriptor("P1(x)", (PredicateAtom("P1", X),), True, Pair(0, 0)),
            TypeDescriptor("P2(x)", (PredicateAtom("P2", X),), True, Single(0)),
        ]

    def grid_points(self, level: int = 0) -> list[Point]:
        step = Fraction(1, 2 ** level)
        n = int(2 / step)
        qs = [k * step for k in range(-n, n + 1)]
        return [Pair(a, b) for a in qs for b in qs] + [Single(q) for q in qs]
