"""Constructive side: separating elementary submodels and their verification.

A build has two independent parts.  The closed form is a set with total,
decidable membership that the criterion predicts to be an elementary
submodel.  The stages replay the witness-closure chain: at every stage one
formula over the current carrier is processed, and if the carrier does not
realize it yet a witness is added whose closure avoids the forbidden set.
Witnesses are drawn from the closed form, so the chain lives inside it.

``tarski_vaught_verify`` then checks the closed form by the Tarski-Vaught
test on sampled formulas, using exact quantifier elimination for the
satisfiable side and a bounded candidate search for the witness side.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .catalog import get_structure
from .catalog.base import Component, DefinableSet, Gap, Structure
from .closure import (
    ClosureSet, Relativizer, acl, closure_from_json, closure_with, common_elements,
    relativizer,
)
from .enumeration import (
    SLOTS, cantor_unpair, curated_templates, random_query_formula, template,
)
from .errors import NoAdmissibleWitness, SeparationRefused
from .logic import Exists, Formula, format_formula, free_variables, parameters, substitute
from .points import Pair, Point, Rat, Single, Tier, parse_point
from .separability import SeparabilityQuery, criterion_t0, criterion_t2

DEFAULT_DEPTH = 2
DEFAULT_SAMPLES = 500
DEFAULT_BUDGET = 200
SEARCH_LIMIT = 200


# -- closed forms --------------------------------------------------------------

def _odd_denominator(q: Fraction) -> bool:
    return q.denominator % 2 == 1


@dataclass(frozen=True)
class ClosedForm:
    """A subset of the universe with decidable membership.

    ``complement`` removes listed points, whole P1 fibres (by base value), open
    intervals and fibre tails above a point.  ``split`` is one half of a twin
    pair: points of Z, then forced points, then a parity rule on the
    denominator assign each point to side ``a`` or ``b``.
    """

    kind: str
    structure: str
    tag: str
    points: tuple = ()
    fibres: tuple = ()
    intervals: tuple = ()
    tails: tuple = ()
    side: str | None = None
    forced_in: tuple = ()
    forced_out: tuple = ()
    Z: Relativizer | None = None

    def __post_init__(self):
        if self.kind not in ("complement", "split"):
            raise ValueError(f"unknown closed form kind {self.kind!r}")
        object.__setattr__(self, "_points", frozenset(self.points))
        object.__setattr__(self, "_in", frozenset(self.forced_in))
        object.__setattr__(self, "_out", frozenset(self.forced_out))

    def contains(self, p: Point) -> bool:
        if self.kind == "complement":
            if p in self._points:
                return False
            if isinstance(p, Pair):
                if p.n in self.fibres:
                    return False
                if any(p.n == t.n and p.m > t.m for t in self.tails):
                    return False
            k = p.key
            return not any(lo.key < k < hi.key for lo, hi in self.intervals)
        if self.Z is not None and p in self.Z:
            return True
        if p in self._in:
            return True
        if p in self._out:
            return False
        return self.natural_side(p) == self.side

    def natural_side(self, p: Point) -> str:
        if isinstance(p, Pair):
            base = Single(p.n)
            if self.Z is not None and base in self.Z:
                return "a" if _odd_denominator(p.m) else "b"
            other = "b" if self.side == "a" else "a"
            if base in self._in:
                return self.side
            if base in self._out:
                return other
            return "a" if _odd_denominator(p.n) else "b"
        return "a" if _odd_denominator(p.q) else "b"

    def landmarks(self) -> list[Point]:
        """Points on or next to the boundary of the removed parts."""
        out = list(self.points) + list(self.forced_in) + list(self.forced_out)
        out += [Single(n) for n in self.fibres]
        for lo, hi in self.intervals:
            out += [lo, hi]
        out += list(self.tails)
        if self.Z is not None:
            out += self.Z.listed()
        return out

    def to_json(self) -> dict:
        data = {"kind": self.kind, "structure": self.structure, "tag": self.tag}
        if self.kind == "complement":
            data.update({
                "points": [str(p) for p in self.points],
                "fibres": [str(Single(n)) for n in self.fibres],
                "intervals": [[str(lo), str(hi)] for lo, hi in self.intervals],
                "tails": [str(t) for t in self.tails],
            })
        else:
            data.update({
                "side": self.side,
                "forced_in": [str(p) for p in self.forced_in],
                "forced_out": [str(p) for p in self.forced_out],
                "Z": None if self.Z is None else self.Z.to_json(),
            })
        return data

    @classmethod
    def from_json(cls, data: dict) -> "ClosedForm":
        sid = data["structure"]

        def pts(key):
            return tuple(parse_point(p, sid) for p in data.get(key, ()))

        if data["kind"] == "complement":
            return cls("complement", sid, data["tag"], points=pts("points"),
                       fibres=tuple(p.q for p in pts("fibres")),
                       intervals=tuple((parse_point(lo, sid), parse_point(hi, sid))
                                       for lo, hi in data.get("intervals", ())),
                       tails=pts("tails"))
        Z = None if data.get("Z") is None else Relativizer.from_json(sid, data["Z"])
        return cls("split", sid, data["tag"], side=data["side"], forced_in=pts("forced_in"),
                   forced_out=pts("forced_out"), Z=Z)


def _payloads(points: Iterable[Point]) -> str:
    return "{" + ", ".join(p.payload() for p in points) + "}"


def t0_closed_form(S: Structure, excludes: Sequence[Point], Z: Relativizer,
                   B: Sequence[Point]) -> ClosedForm:
    """M minus B \\ Z; in EX1 the fibres over excluded P2 points go too."""
    fibres = tuple(sorted(p.q for p in excludes if isinstance(p, Single)))
    if fibres:
        tag = f"M \\ ({_payloads(excludes)} u f^-1{_payloads(Single(n) for n in fibres)})"
    elif S.signature.constant_family and Z.has_constants:
        tag = f"[M \\ dcl({_payloads(B)})] u Z"
    else:
        tag = f"M \\ {_payloads(excludes)}"
    return ClosedForm("complement", S.id, tag, points=tuple(excludes), fibres=fibres)


def t2_closed_forms(S: Structure, CA: ClosureSet, CB: ClosureSet,
                    Z: Relativizer) -> tuple[ClosedForm, ClosedForm]:
    fa = tuple(p for p in CA.listed() if p not in Z)
    fb = tuple(p for p in CB.listed() if p not in Z)
    rule = "odd denominators to a, even to b"
    return (
        ClosedForm("split", S.id, f"Z u acl(A u Z) u parity-a \\ acl(B u Z) [{rule}]",
                   side="a", forced_in=fa, forced_out=fb, Z=Z),
        ClosedForm("split", S.id, f"Z u acl(B u Z) u parity-b \\ acl(A u Z) [{rule}]",
                   side="b", forced_in=fb, forced_out=fa, Z=Z),
    )


# -- witnesses ----------------------------------------------------------------

def constants_in(S: Structure, D: DefinableSet, extra: Iterable[Point] = ()) -> list[Point]:
    """The constants lying in D (EHR only); constants past every endpoint behave alike."""
    if not S.signature.constant_family:
        return []
    top = 0
    for comp in D:
        for b in (comp.lower, comp.upper):
            if isinstance(b, Tier) and b.t == 0:
                top = max(top, int(b.q // 1) + 1)
    for p in extra:
        if isinstance(p, Tier) and p.t == 0:
            top = max(top, int(p.q // 1) + 1)
    return [c for c in (S.constant(i) for i in range(top + 2)) if c in D]


@dataclass(frozen=True)
class WitnessChoice:
    formula: Formula
    chosen: Point
    reason: str
    forbidden: str
    Z: str
    closure: ClosureSet
    transcript: tuple = ()

    def to_json(self) -> dict:
        return {
            "formula": format_formula(self.formula),
            "chosen": str(self.chosen),
            "reason": self.reason,
            "forbidden": self.forbidden,
            "Z": self.Z,
            "closure_after": self.closure.describe(),
            "check": "(acl(carrier u {c} u Z) n forbidden) \\ Z = 0",
            "rejected": list(self.transcript),
        }


def _comp_rank(comp: Component, index: int):
    """Sort key: unbounded first, then multi-block spans, then by decreasing width."""
    lo, hi = comp.lower, comp.upper
    if lo is None or hi is None:
        return (0, 0, index)
    lk, hk = lo.key, hi.key
    if (len(lk) != len(hk) or lk[:-1] != hk[:-1] or isinstance(lo, Gap) or isinstance(hi, Gap)):
        return (1, 0, index)
    return (2, -(hk[-1] - lk[-1]), index)


def _bad_elements(S, C: ClosureSet, forbidden, Z: Relativizer) -> list[Point]:
    if isinstance(forbidden, ClosureSet):
        return [e.point for e in common_elements(C, forbidden, Z)]
    return [f for f in forbidden if f in C and f not in Z]


def _describe_forbidden(forbidden) -> str:
    if isinstance(forbidden, ClosureSet):
        return forbidden.describe()
    return "{" + ", ".join(str(p) for p in forbidden) + "}"


def choose_witness(S, phi: Formula, params: Mapping[str, Point] | None, forbidden,
                   z=None, base: Sequence[Point] = (),
                   admissible: Callable[[Point], bool] | None = None,
                   limit: int = SEARCH_LIMIT) -> WitnessChoice:
    """A point c of phi(M, params) with (acl(base, params, c, Z) n forbidden) \\ Z = 0.

    Preference: a solution already in Z, then interior points of the widest
    infinite component (midpoint first), then isolated points and closed
    endpoints.  ``admissible`` further restricts the candidates.
    """
    S = get_structure(S)
    Z = relativizer(S, z)
    if params:
        phi = substitute(phi, params)
    D = S.definable_set(phi)
    if D.is_empty:
        raise NoAdmissibleWitness(f"{format_formula(phi)} has no solutions", [])
    fixed = list(base) + parameters(phi) + list(Z.points)
    transcript = []

    def attempt(c: Point, reason: str):
        if admissible is not None and not admissible(c):
            transcript.append({"candidate": str(c), "rejected": "outside the target set"})
            return None
        C = acl(S, fixed + [c])
        bad = _bad_elements(S, C, forbidden, Z)
        if bad:
            transcript.append({"candidate": str(c),
                               "rejected": "closure meets forbidden at " + ", ".join(map(str, bad))})
            return None
        return WitnessChoice(phi, c, reason, _describe_forbidden(forbidden), Z.describe(), C,
                             tuple(transcript))

    in_z = [p for p in Z.listed() if p in D]
    if Z.has_constants:
        in_z += constants_in(S, D, fixed)
    for c in in_z:
        found = attempt(c, "in-Z")
        if found:
            return found
    comps = list(D)
    infinite = sorted((i for i, c in enumerate(comps) if not c.is_point),
                      key=lambda i: _comp_rank(comps[i], i))
    for i in infinite:
        for c in itertools.islice(S.interior(comps[i]), limit):
            found = attempt(c, "interior")
            if found:
                return found
    for comp in comps:
        for c in comp.closed_endpoints():
            found = attempt(c, "isolated" if comp.is_point else "endpoint")
            if found:
                return found
    raise NoAdmissibleWitness(
        f"no admissible witness for {format_formula(phi)} avoiding "
        f"{_describe_forbidden(forbidden)} modulo Z", transcript)


# -- stages ---------------------------------------------------------------------

@dataclass(frozen=True)
class Stage:
    index: int
    chain: str
    carrier: tuple[Point, ...]
    formula: str
    params: tuple[Point, ...]
    outcome: str
    witness: Point | None = None
    certificate: dict | None = None

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "chain": self.chain,
            "carrier": [str(p) for p in self.carrier],
            "processed": [{
                "formula": self.formula,
                "params": [str(p) for p in self.params],
                "outcome": self.outcome,
                "witness": None if self.witness is None else str(self.witness),
            }],
            "witness_certificate": self.certificate,
        }

    @classmethod
    def from_json(cls, sid: str, data: dict) -> "Stage":
        proc = data["processed"][0]
        return cls(data["index"], data["chain"],
                   tuple(parse_point(p, sid) for p in data["carrier"]), proc["formula"],
                   tuple(parse_point(p, sid) for p in proc["params"]), proc["outcome"],
                   None if proc["witness"] is None else parse_point(proc["witness"], sid),
                   data.get("witness_certificate"))


class _Chain:
    """One ascending chain of acl-closed carriers A_0 <= A_1 <= ..."""

    def __init__(self, S: Structure, name: str, start: ClosureSet, Z: Relativizer,
                 form: ClosedForm | None):
        self.S, self.name, self.Z, self.form = S, name, Z, form
        self.closure = start
        self.snapshots = [tuple(start.listed())]
        self.stages: list[Stage] = []

    @property
    def carrier(self) -> tuple[Point, ...]:
        return self.snapshots[-1]

    def _admissible(self, c: Point) -> bool:
        if self.form is None:
            return True
        return all(self.form.contains(p) for p in acl(self.S, [c]).listed())

    def _realizer(self, D: DefinableSet) -> Point | None:
        for p in self.carrier:
            if p in D:
                return p
        if self.closure.intensional_constants:
            found = constants_in(self.S, D, self.carrier)
            if found:
                return found[0]
        return None

    def step(self, s: int, forbidden) -> Stage:
        S = self.S
        n, m = cantor_unpair(s)
        snapshot = self.snapshots[min(n, len(self.snapshots) - 1)]
        ti, pi = cantor_unpair(m)
        phi = template(ti, S.signature)
        slots = [v for v in SLOTS if v in free_variables(phi)]
        if slots and not snapshot:
            return self._record(s, format_formula(phi), (), "no-parameters")
        params = []
        for _ in slots:
            pi, digit = divmod(pi, len(snapshot))
            params.append(snapshot[digit])
        inst = substitute(phi, dict(zip(slots, params)))
        text = format_formula(inst)
        D = S.definable_set(inst)
        if D.is_empty:
            return self._record(s, text, params, "inconsistent")
        r = self._realizer(D)
        if r is not None:
            return self._record(s, text, params, "already-realized", r)
        choice = choose_witness(S, inst, None, forbidden, self.Z, base=self.carrier,
                                admissible=self._admissible)
        self.closure = acl(S, list(self.carrier) + [choice.chosen])
        self.snapshots.append(tuple(self.closure.listed()))
        return self._record(s, text, params, "witness-added", choice.chosen, choice.to_json())

    def _record(self, s, text, params, outcome, witness=None, cert=None) -> Stage:
        st = Stage(s, self.name, self.carrier, text, tuple(params), outcome, witness, cert)
        self.stages.append(st)
        return st


# -- descriptions ---------------------------------------------------------------

@dataclass
class SubmodelDescription:
    structure: str
    closed_form: ClosedForm | None
    contains: ClosureSet
    excludes: tuple[Point, ...]
    Z: Relativizer
    stages: list[Stage] = field(default_factory=list)
    side: str = "t0"
    budget: int = DEFAULT_BUDGET
    query: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "complete" if self.closed_form is not None else "incomplete"

    def member(self, p: Point) -> bool:
        if self.closed_form is None:
            raise ValueError("staged-only description has no decidable membership")
        return self.closed_form.contains(p)

    def carriers(self) -> list[tuple[Point, ...]]:
        return [st.carrier for st in self.stages]

    def to_json(self) -> dict:
        return {
            "structure": self.structure,
            "status": self.status,
            "side": self.side,
            "closed_form": None if self.closed_form is None else self.closed_form.to_json(),
            "contains": self.contains.to_json(),
            "excludes": [str(p) for p in self.excludes],
            "Z": self.Z.to_json(),
            "budget": self.budget,
            "stages": [st.to_json() for st in self.stages],
            "query": self.query,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubmodelDescription":
        sid = get_structure(data["structure"]).id
        cf = data.get("closed_form")
        return cls(
            sid,
            None if cf is None else ClosedForm.from_json(cf),
            closure_from_json(data["contains"]),
            tuple(parse_point(p, sid) for p in data["excludes"]),
            Relativizer.from_json(sid, data["Z"]),
            [Stage.from_json(sid, st) for st in data.get("stages", ())],
            data.get("side", "t0"),
            int(data.get("budget", DEFAULT_BUDGET)),
            data.get("query", {}),
        )


def staged_only(desc: SubmodelDescription) -> SubmodelDescription:
    """The same build without its closed form: a truncated chain, hence incomplete."""
    return SubmodelDescription(desc.structure, None, desc.contains, desc.excludes, desc.Z,
                               list(desc.stages), desc.side, desc.budget, desc.query)


def _refuse(verdict) -> SeparationRefused:
    offending = verdict.certificate.get("offending", [])
    first = offending[0] if offending else {}
    where = first.get("point", "") if isinstance(first, dict) else ""
    return SeparationRefused(
        f"separation criterion fails at {where}: {verdict.criterion}", verdict.to_json())


def build_t0_separator(S, A: Iterable[Point], B: Iterable[Point], z=None,
                       budget: int = DEFAULT_BUDGET, closed_form: bool = True
                       ) -> SubmodelDescription:
    """A submodel containing acl(A u Z) and missing B \\ Z, or a refusal."""
    q = SeparabilityQuery.make(S, "t0", A, B, z)
    verdict = criterion_t0(q)
    if not verdict.answer:
        raise _refuse(verdict)
    S, Z = q.structure, q.Z
    contains = closure_with(S, q.A, Z)
    excludes = tuple(b for b in q.B if b not in Z)
    form = t0_closed_form(S, excludes, Z, q.B)
    chain = _Chain(S, "t0", contains, Z, form)
    for s in range(budget):
        chain.step(s, excludes)
    return SubmodelDescription(S.id, form if closed_form else None, contains, excludes, Z,
                               chain.stages, "t0", budget, q.to_json())


def build_t2_separators(S, A: Iterable[Point], B: Iterable[Point], z=None,
                        budget: int = DEFAULT_BUDGET, closed_form: bool = True
                        ) -> tuple[SubmodelDescription, SubmodelDescription]:
    """Twin submodels around A and B meeting only inside Z, or a refusal.

    The chains alternate: one stage on the A side, then one on the B side,
    each avoiding the current closure of the other side.
    """
    q = SeparabilityQuery.make(S, "t2", A, B, z)
    verdict = criterion_t2(q)
    if not verdict.answer:
        raise _refuse(verdict)
    S, Z = q.structure, q.Z
    CA, CB = closure_with(S, q.A, Z), closure_with(S, q.B, Z)
    form_a, form_b = t2_closed_forms(S, CA, CB, Z)
    chain_a = _Chain(S, "a", CA, Z, form_a)
    chain_b = _Chain(S, "b", CB, Z, form_b)
    for s in range(budget):
        chain_a.step(s, chain_b.closure)
        chain_b.step(s, chain_a.closure)
        shared = [p for p in chain_a.carrier if p in set(chain_b.carrier) and p not in Z]
        if shared:
            raise AssertionError(f"twin carriers meet outside Z at stage {s}: {shared}")
    excl_a = tuple(p for p in CB.listed() if p not in Z)
    excl_b = tuple(p for p in CA.listed() if p not in Z)
    qj = q.to_json()
    return (
        SubmodelDescription(S.id, form_a if closed_form else None, CA, excl_a, Z,
                            chain_a.stages, "a", budget, qj),
        SubmodelDescription(S.id, form_b if closed_form else None, CB, excl_b, Z,
                            chain_b.stages, "b", budget, qj),
    )


# -- Tarski-Vaught verification -------------------------------------------------

@dataclass(frozen=True)
class VerifyReport:
    status: str
    formula: str | None = None
    params: tuple[str, ...] = ()
    checked: int = 0
    detail: str = ""
    config: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "counterexample": None if self.formula is None else {
            "formula": self.formula, "params": list(self.params)},
            "checked": self.checked, "detail": self.detail, "config": self.config}


def _constant_horizon(points: Iterable[Point]) -> int:
    top = 0
    for p in points:
        if isinstance(p, Tier) and p.t == 0:
            top = max(top, int(p.q // 1) + 1)
    return top + 3


def _exact_checks(S: Structure, desc: SubmodelDescription) -> str | None:
    for p in desc.contains.listed():
        if not desc.member(p):
            return f"required point {p} is missing"
    if desc.contains.intensional_constants:
        horizon = _constant_horizon(list(desc.contains.listed()) + list(desc.excludes)
                                    + desc.closed_form.landmarks())
        for i in range(horizon):
            if not desc.member(S.constant(i)):
                return f"required constant c{i} is missing"
    for p in desc.excludes:
        if desc.member(p):
            return f"forbidden point {p} is present"
    return None


def _landmarks(S: Structure, desc: SubmodelDescription) -> list[Point]:
    raw = desc.closed_form.landmarks() + list(desc.contains.listed())
    if S.signature.constant_family:
        raw += [S.constant(i) for i in range(3)]
    if S.id == "ex1":
        raw += [Single(p.n) for p in raw if isinstance(p, Pair)]
    seen, out = set(), []
    for p in raw:
        if p not in seen and desc.member(p):
            seen.add(p)
            out.append(p)
    return out


def _pool(S: Structure, desc: SubmodelDescription, landmarks: list[Point]) -> list[Point]:
    grid = [p for p in S.grid_points(0) if desc.member(p)]
    return landmarks + [p for p in grid if p not in set(landmarks)]


def _find_witness(S: Structure, D: DefinableSet, member) -> Point | None:
    for comp in D:
        for p in S.points_in(comp, SEARCH_LIMIT):
            if member(p):
                return p
    return None


def _battery(S: Structure, landmarks: list[Point], cap: int):
    """Curated templates over landmark tuples, most specific first."""
    items = []
    for phi in curated_templates(S.signature):
        slots = [v for v in SLOTS if v in free_variables(phi)]
        pool = landmarks[:12] if len(slots) <= 1 else landmarks[:6]
        for combo in itertools.product(pool, repeat=len(slots)):
            items.append(substitute(phi, dict(zip(slots, combo))))
    return items[:cap]


def tarski_vaught_verify(desc: SubmodelDescription, depth: int = DEFAULT_DEPTH,
                         samples: int = DEFAULT_SAMPLES, seed: int = 0) -> VerifyReport:
    """Check that the description is closed under witnesses of sampled formulas.

    For each sampled ``exists x phi(x, a)`` with parameters a from the
    description and quantifier depth <= ``depth``: if M satisfies it, some
    witness must lie in the description.  The membership requirements
    (``contains`` and ``excludes``) are checked exactly first.
    """
    config = {"depth": depth, "samples": samples, "seed": seed}
    S = get_structure(desc.structure)
    if desc.closed_form is None:
        return VerifyReport("incomplete", detail="no decidable membership: staged chain only",
                            config=config)
    bad = _exact_checks(S, desc)
    if bad:
        return VerifyReport("fail", detail=bad, config=config)
    landmarks = _landmarks(S, desc)
    pool = _pool(S, desc, landmarks)
    rng = random.Random(seed)
    items = _battery(S, landmarks, samples // 2)
    while len(items) < samples:
        params = [rng.choice(pool) for _ in range(rng.randint(0, 3))]
        items.append(random_query_formula(rng, S.signature, params, max(depth - 1, 0)))
    member = desc.member
    for n, phi in enumerate(items, 1):
        D = S.definable_set(phi)
        if D.is_empty:
            continue
        if _find_witness(S, D, member) is None:
            params = tuple(str(p) for p in parameters(phi))
            return VerifyReport("fail", format_formula(Exists("x", phi)), params, n,
                                f"M satisfies it with witnesses in {D} but none found in the "
                                "description", config)
    return VerifyReport("pass", checked=len(items), config=config)


# -- negative controls ----------------------------------------------------------

def interval_gap_control() -> SubmodelDescription:
    """DLO minus the open interval (0, 1), endpoints kept: not elementary."""
    lo, hi = Rat(0), Rat(1)
    form = ClosedForm("complement", "dlo", "M \\ (0, 1)", intervals=((lo, hi),))
    return SubmodelDescription("dlo", form, acl("dlo", [lo, hi]), (Rat(Fraction(1, 2)),),
                               relativizer("dlo", None), side="control")


def fibre_gap_control() -> SubmodelDescription:
    """EX1 with the whole fibre over 2 removed but 2 kept: f is no longer onto."""
    form = ClosedForm("complement", "ex1", "M \\ f^-1(2)", fibres=(Fraction(2),))
    return SubmodelDescription("ex1", form, acl("ex1", [Single(2)]), (Pair(2, 3),),
                               relativizer("ex1", None), side="control")


def fibre_tail_control() -> SubmodelDescription:
    """EX1 with the part of the fibre over 2 above (2, 0) removed: the fibre gets a maximum."""
    form = ClosedForm("complement", "ex1", "M \\ {(2, m) : m > 0}", tails=(Pair(2, 0),))
    return SubmodelDescription("ex1", form, acl("ex1", [Pair(2, 0)]), (Pair(2, 1),),
                               relativizer("ex1", None), side="control")


NEGATIVE_CONTROLS = {
    "interval-gap": interval_gap_control,
    "fibre-gap": fibre_gap_control,
    "fibre-tail": fibre_tail_control,
}
