"""Separability in the hypergraph of elementary submodels, decided by closures.

Every verdict is computed from acl/dcl of finite sets and carries a
certificate that can be re-checked with :mod:`sepmod.closure`.  The three
hypergraph classes (all submodels, countable submodels, submodels prime over
finite sets) share one criterion, so ``hypergraph_class`` is only echoed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .catalog import get_structure
from .catalog.base import Structure, TypeDescriptor
from .closure import (
    ClosureSet, Relativizer, acl, closure_with, common_elements, dcl, relativizer,
)
from .errors import HypothesesUnmetError, PreconditionError
from .points import Pair, Point, Single, sort_points

MODES = ("t0", "t2")
HYPERGRAPH_CLASSES = ("H", "H_omega1", "H_p")

# reference tags attached to every EX1 verdict that involves a pair a, f(a)
EX1_REFERENCES = ("example:ex1", "note:suspected-transposition")
EX1_ORIENTATION = (
    "f(a) lies in dcl(a), so every submodel containing a contains f(a): a cannot be "
    "separated from f(a).  The fibre over f(a) is infinite, so f(a) can be separated "
    "from a.")


@dataclass(frozen=True)
class SeparabilityQuery:
    structure: Structure
    mode: str
    A: tuple[Point, ...]
    B: tuple[Point, ...]
    Z: Relativizer
    hypergraph_class: str = "H"

    @classmethod
    def make(cls, structure, mode: str, A: Iterable[Point], B: Iterable[Point],
             z=None, hypergraph_class: str = "H") -> "SeparabilityQuery":
        S = get_structure(structure)
        mode = mode.lower()
        if mode not in MODES:
            raise PreconditionError("usage", f"mode must be one of {MODES}, not {mode!r}")
        if hypergraph_class not in HYPERGRAPH_CLASSES:
            raise PreconditionError("usage", f"unknown hypergraph class {hypergraph_class!r}")
        A = tuple(sort_points(set(A)))
        B = tuple(sort_points(set(B)))
        S.require(A + B)
        return cls(S, mode, A, B, relativizer(S, z), hypergraph_class)

    def validate(self) -> None:
        if not self.A or not self.B:
            raise PreconditionError("empty-side", "A and B must be nonempty")
        Z = self.Z
        shared = [p for p in self.A if p in self.B and p not in Z]
        if shared:
            raise PreconditionError(
                "overlap-outside-Z", f"A and B share {', '.join(map(str, shared))} outside Z")
        if all(b in Z for b in self.B):
            raise PreconditionError("B-inside-Z", "B lies inside Z; separation is vacuous")
        if self.mode == "t2" and all(a in Z for a in self.A):
            raise PreconditionError("A-inside-Z", "A lies inside Z; separation is vacuous")

    def to_json(self) -> dict:
        return {
            "structure": self.structure.id,
            "mode": self.mode,
            "A": [str(p) for p in self.A],
            "B": [str(p) for p in self.B],
            "Z": self.Z.to_json(),
            "hypergraph_class": self.hypergraph_class,
        }


@dataclass(frozen=True)
class Verdict:
    answer: bool
    criterion: str
    certificate: dict
    notes: tuple[str, ...] = ()
    query: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"answer": self.answer, "criterion": self.criterion,
                "certificate": self.certificate, "notes": list(self.notes),
                "query": self.query}


def _notes(q: SeparabilityQuery) -> tuple[str, ...]:
    return (f"saturation: {q.structure.saturation_note}",
            f"hypergraph class {q.hypergraph_class}: all three classes share this criterion")


def _fibre_links(S: Structure, A: Sequence[Point], B: Sequence[Point]) -> list[tuple[Point, Point]]:
    """Pairs (x, y) from A x B or B x A with y = f(x)."""
    if S.id != "ex1":
        return []
    links = []
    for xs, ys in ((A, B), (B, A)):
        for x in xs:
            if isinstance(x, Pair) and Single(x.n) in ys:
                links.append((x, Single(x.n)))
    return links


def _cite_ex1(q: SeparabilityQuery, cert: dict) -> dict:
    links = _fibre_links(q.structure, q.A, q.B)
    if links:
        cert["fibre_links"] = [{"a": str(a), "f(a)": str(b)} for a, b in links]
        cert["references"] = list(EX1_REFERENCES)
        cert["orientation"] = EX1_ORIENTATION
    return cert


def criterion_t0(q: SeparabilityQuery) -> Verdict:
    """Some submodel contains A u Z and meets B only inside Z iff (acl(A u Z) n B) \\ Z = 0."""
    q.validate()
    C = closure_with(q.structure, q.A, q.Z)
    offending = [C.provenance(b).to_json() for b in q.B if b in C and b not in q.Z]
    cert = _cite_ex1(q, {
        "closure": C.to_json(),
        "Z": q.Z.describe(),
        "offending": offending,
    })
    return Verdict(not offending, "t0: (acl(A u Z) n B) \\ Z = 0", cert, _notes(q), q.to_json())


def criterion_t2(q: SeparabilityQuery) -> Verdict:
    """Disjoint-modulo-Z submodels around A and B iff (acl(A u Z) n acl(B u Z)) \\ Z = 0."""
    q.validate()
    CA = closure_with(q.structure, q.A, q.Z)
    CB = closure_with(q.structure, q.B, q.Z)
    common = common_elements(CA, CB, q.Z)
    offending = [{"point": str(e.point), "from_A": e.to_json(),
                  "from_B": CB.provenance(e.point).to_json()} for e in common]
    cert = _cite_ex1(q, {
        "closure_A": CA.to_json(),
        "closure_B": CB.to_json(),
        "Z": q.Z.describe(),
        "offending": offending,
    })
    if common and CA.intensional_constants and not q.Z.has_constants:
        cert["intensional"] = "every constant c_i lies in both closures and outside Z"
    return Verdict(not common, "t2: (acl(A u Z) n acl(B u Z)) \\ Z = 0", cert,
                   _notes(q), q.to_json())


def check(q: SeparabilityQuery) -> Verdict:
    return criterion_t0(q) if q.mode == "t0" else criterion_t2(q)


# -- mutual separability with type coverage --------------------------------

def _escaping_realization(S: Structure, t: TypeDescriptor, C: ClosureSet, limit: int = 64):
    """A realization of ``t`` outside ``C``; None when every candidate lies in C."""
    for comp in S.type_set(t):
        for p in S.points_in(comp, limit):
            if p not in C and S.satisfies_schema(t.schema, p):
                return p
    return None


def _type_prefix(S: Structure, points: Iterable[Point]) -> int:
    """A constant index past every block touched by ``points``."""
    top = 0
    for p in points:
        if p.t == 0:
            top = max(top, int(p.q // 1) + 1)
    return top + 2


def saturated_pair_separability(S, A: Iterable[Point], B: Iterable[Point]) -> Verdict:
    """A and B lie in disjoint submodels (in a rich enough model) iff

    (1) acl(A) n acl(B) = 0, and
    (2) every isolated 1-type over 0 has a realization outside acl(A) and one
        outside acl(B).
    """
    S = get_structure(S)
    A, B = tuple(sort_points(set(A))), tuple(sort_points(set(B)))
    if not A or not B:
        raise PreconditionError("empty-side", "A and B must be nonempty")
    S.require(A + B)
    CA, CB = acl(S, A), acl(S, B)
    common = common_elements(CA, CB)
    cond1 = not common
    coverage = []
    cond2 = True
    prefix = _type_prefix(S, A + B) if S.signature.constant_family else 3
    for t in S.list_isolated_1types(prefix):
        if not t.isolated:
            continue
        wa, wb = _escaping_realization(S, t, CA), _escaping_realization(S, t, CB)
        ok = wa is not None and wb is not None
        cond2 = cond2 and ok
        coverage.append({"type": t.name, "outside_acl_A": None if wa is None else str(wa),
                         "outside_acl_B": None if wb is None else str(wb), "covered": ok})
    cert = {
        "condition_1": cond1,
        "closure_A": CA.to_json(),
        "closure_B": CB.to_json(),
        "intersection": [e.to_json() for e in common],
        "condition_2": cond2,
        "type_coverage": coverage,
    }
    if S.signature.constant_family:
        cert["constant_family"] = (
            f"isolated types were checked up to constant index {prefix}; A and B touch no "
            "block past it, so every later block type has infinitely many realizations "
            "outside both finite listed closures, while every type x = c_i is realized "
            "only by c_i, which lies in acl(0) and hence in both closures")
    failing = [c["type"] for c in coverage if not c["covered"]]
    if failing:
        cert["failing_types"] = failing
    notes = (f"saturation: {S.saturation_note}",)
    return Verdict(cond1 and cond2, "acl(A) n acl(B) = 0 and isolated-type coverage",
                   cert, notes, {"structure": S.id, "A": [str(p) for p in A],
                                 "B": [str(p) for p in B]})


# -- quite o-minimal reports -------------------------------------------------

def _require_acl_closed_z(S: Structure, Z: Relativizer) -> None:
    empty_closed = not acl(S, []).listed() and not acl(S, []).intensional_constants
    if not Z.closed and not (not Z.points and empty_closed):
        raise PreconditionError("Z-not-acl-closed", "Z must be the acl of a finite set")


@dataclass(frozen=True)
class EquivalenceReport:
    conditions: dict
    consistent: bool
    theorem_applies: bool
    certificate: dict

    def to_json(self) -> dict:
        return {"conditions": self.conditions, "consistent": self.consistent,
                "theorem_applies": self.theorem_applies, "certificate": self.certificate}


def qo_equivalence_report(S, a: Point, b: Point, z=None) -> EquivalenceReport:
    """The six separability conditions for one pair of elements.

    (4) a notin dcl(bZ), (5) b notin dcl(aZ) and (6) (dcl(aZ) n dcl(bZ)) \\ Z = 0
    are computed from closures.  (1) a is Z-separable from b, (2) b from a and
    (3) both mutually are read off (5), (4) and (6); those pairings hold in any
    structure with dcl = acl.  All six coincide when the exchange principle
    holds as well.
    """
    S = get_structure(S)
    Z = relativizer(S, z)
    S.require([a, b])
    if a == b:
        raise PreconditionError("equal-elements", "a and b must differ")
    if a in Z or b in Z:
        raise PreconditionError("element-in-Z", "a and b must lie outside Z")
    _require_acl_closed_z(S, Z)
    Ca, Cb = dcl(S, [a, *Z.points]), dcl(S, [b, *Z.points])
    common = common_elements(Ca, Cb, Z)
    c4, c5, c6 = a not in Cb, b not in Ca, not common
    conditions = {"1": c5, "2": c4, "3": c6, "4": c4, "5": c5, "6": c6}
    consistent = len(set(conditions.values())) == 1
    f = S.flags
    applies = f.exchange_principle and f.quite_o_minimal and f.almost_omega_categorical
    if applies and not consistent:
        raise AssertionError(f"six-way equivalence violated on {a}, {b}: {conditions}")
    cert = {"dcl_aZ": Ca.to_json(), "dcl_bZ": Cb.to_json(),
            "intersection": [e.to_json() for e in common], "Z": Z.describe(),
            "pairings": "(1)<=>(5), (2)<=>(4), (3)<=>(6)"}
    if not consistent:
        cert["split"] = ("exchange fails, so the conditions split into three independent "
                         "equivalences")
    return EquivalenceReport(conditions, consistent, applies, cert)


def _flag_gate(S: Structure) -> None:
    f = S.flags
    missing = [name for name in ("quite_o_minimal", "almost_omega_categorical")
               if not getattr(f, name)]
    if missing:
        raise HypothesesUnmetError(
            "theorem hypotheses unmet: " + ", ".join(f"{m} = false" for m in missing))


def qo_finite_sets(S, A: Iterable[Point], B: Iterable[Point], z=None) -> Verdict:
    """Mutual Z-separability of finite A, B via the pairwise dcl criterion.

    The aggregate criterion (dcl(A u Z) n dcl(B u Z)) \\ Z = 0 is computed too
    and must agree.
    """
    S = get_structure(S)
    _flag_gate(S)
    Z = relativizer(S, z)
    A, B = tuple(sort_points(set(A))), tuple(sort_points(set(B)))
    if not A or not B:
        raise PreconditionError("empty-side", "A and B must be nonempty")
    S.require(A + B)
    if any(p in Z for p in A + B):
        raise PreconditionError("element-in-Z", "A and B must lie outside Z")
    _require_acl_closed_z(S, Z)
    matrix = []
    pairwise = True
    for a in A:
        row = []
        for b in B:
            common = common_elements(dcl(S, [a, *Z.points]), dcl(S, [b, *Z.points]), Z)
            pairwise = pairwise and not common
            row.append([str(e.point) for e in common])
        matrix.append(row)
    agg_common = common_elements(dcl(S, [*A, *Z.points]), dcl(S, [*B, *Z.points]), Z)
    aggregate = not agg_common
    if aggregate != pairwise:
        raise AssertionError(f"pairwise and aggregate criteria disagree on {A}, {B}")
    cert = {"matrix": matrix, "rows": [str(a) for a in A], "columns": [str(b) for b in B],
            "aggregate": aggregate,
            "aggregate_intersection": [str(e.point) for e in agg_common], "Z": Z.describe()}
    return Verdict(pairwise, "pairwise: (dcl(aZ) n dcl(bZ)) \\ Z = 0 for all a in A, b in B",
                   cert, (f"saturation: {S.saturation_note}",),
                   {"structure": S.id, "A": [str(p) for p in A], "B": [str(p) for p in B],
                    "Z": Z.to_json()})
