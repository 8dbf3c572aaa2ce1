"""Shared machinery for the catalog structures.

Quantifier elimination works by test points.  For a finite anchor set ``A``
each structure partitions its universe into finitely many convex *cells*,
each an orbit of the automorphisms fixing ``A`` pointwise.  A formula whose
parameters, constants and free-variable values all lie in ``A`` therefore has
constant truth value on every cell, so ``exists x`` reduces to a disjunction
over one representative per cell.  Evaluation recurses on that reduction;
nothing is searched.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from ..errors import InconsistentTypeError, QuantifierBudgetError, SortError
from ..logic import (
    BINARY, Apply, Atom, Const, Exists, Forall, Formula, Implies, Not, Or, Param,
    PredicateAtom, Signature, Var, conj, constants, eq, format_formula, free_variables,
    parameters, quantifier_depth, substitute,
)
from ..points import POINT_TYPES, Point

DEFAULT_DEPTH_BUDGET = 8


@dataclass(frozen=True)
class Gap:
    """A cut that no point realizes, e.g. the end of a fibre."""

    key: tuple
    label: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Component:
    """A convex piece of a definable set.  ``None`` bounds mean -inf / +inf.

    Bounds are points or :class:`Gap` cuts.  Gap bounds are always stored
    open since no point sits on them.
    """

    lower: object
    upper: object
    lower_open: bool = True
    upper_open: bool = True

    def __post_init__(self):
        if isinstance(self.lower, Gap) and not self.lower_open:
            object.__setattr__(self, "lower_open", True)
        if isinstance(self.upper, Gap) and not self.upper_open:
            object.__setattr__(self, "upper_open", True)

    @classmethod
    def point(cls, p: Point) -> "Component":
        return cls(p, p, False, False)

    @property
    def is_point(self) -> bool:
        return (self.lower is not None and self.lower == self.upper
                and not self.lower_open and not self.upper_open)

    def contains(self, p: Point) -> bool:
        k = p.key
        if self.lower is not None:
            lk = self.lower.key
            if k < lk or (self.lower_open and k == lk):
                return False
        if self.upper is not None:
            uk = self.upper.key
            if k > uk or (self.upper_open and k == uk):
                return False
        return True

    def closed_endpoints(self) -> list[Point]:
        out = []
        if self.lower is not None and not self.lower_open:
            out.append(self.lower)
        if self.upper is not None and not self.upper_open and self.upper != self.lower:
            out.append(self.upper)
        return out

    def __str__(self):
        if self.is_point:
            return f"{{{self.lower}}}"
        lo = "(-inf" if self.lower is None else ("(" if self.lower_open else "[") + str(self.lower)
        hi = "+inf)" if self.upper is None else str(self.upper) + (")" if self.upper_open else "]")
        return f"{lo}, {hi}"


@dataclass(frozen=True)
class DefinableSet:
    """Finite union of disjoint, sorted, maximal convex components."""

    structure: str
    components: tuple[Component, ...]

    def __contains__(self, p: Point) -> bool:
        return any(c.contains(p) for c in self.components)

    def contains(self, p: Point) -> bool:
        return p in self

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def is_finite(self) -> bool:
        return all(c.is_point for c in self.components)

    def points(self) -> list[Point]:
        if not self.is_finite:
            raise ValueError("definable set is infinite")
        return [c.lower for c in self.components]

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __str__(self):
        if not self.components:
            return "{}"
        return " u ".join(str(c) for c in self.components)

    def to_json(self) -> list:
        return [
            {
                "lower": None if c.lower is None else str(c.lower),
                "upper": None if c.upper is None else str(c.upper),
                "lower_open": c.lower_open,
                "upper_open": c.upper_open,
            }
            for c in self.components
        ]

    def check_normal_form(self) -> None:
        """Raise AssertionError unless components are nonempty, sorted, disjoint and maximal."""
        prev = None
        for c in self.components:
            if c.lower is not None and c.upper is not None:
                lk, uk = c.lower.key, c.upper.key
                assert lk < uk or (lk == uk and c.is_point), f"empty component {c}"
            if prev is not None:
                assert prev.upper is not None and c.lower is not None, "overlapping components"
                pk, ck = prev.upper.key, c.lower.key
                assert pk <= ck, f"unsorted components {prev} / {c}"
                if pk == ck:
                    # touching is allowed only across a missing point
                    assert not isinstance(c.lower, Gap), f"mergeable components {prev} / {c}"
                    assert prev.upper_open and c.lower_open, f"mergeable components {prev} / {c}"
            prev = c


def merge_cells(structure: str, cells: Iterable[tuple[Component, bool]]) -> DefinableSet:
    """Union of the selected consecutive cells, merged into maximal components."""
    out: list[Component] = []
    for comp, keep in cells:
        if not keep:
            continue
        if out:
            last = out[-1]
            if (last.upper is not None and comp.lower is not None
                    and last.upper.key == comp.lower.key
                    and (isinstance(comp.lower, Gap) or not (last.upper_open and comp.lower_open))):
                out[-1] = Component(last.lower, comp.upper, last.lower_open, comp.upper_open)
                continue
        out.append(comp)
    return DefinableSet(structure, tuple(out))


# -- candidate rationals ----------------------------------------------------

def ray_offsets() -> Iterator[Fraction]:
    """1, 2, 3, 4, then halves, thirds, ... of growing range; every positive rational eventually."""
    seen = set()
    for d in itertools.count(1):
        for k in range(1, 4 * d + 1):
            r = Fraction(k, d)
            if r not in seen:
                seen.add(r)
                yield r


def rationals_between(lo: Fraction | None, hi: Fraction | None) -> Iterator[Fraction]:
    """Distinct rationals strictly inside (lo, hi); the midpoint comes first when bounded."""
    if lo is None and hi is None:
        yield Fraction(0)
        for r in ray_offsets():
            yield r
            yield -r
    elif hi is None:
        for r in ray_offsets():
            yield lo + r
    elif lo is None:
        for r in ray_offsets():
            yield hi - r
    else:
        width = hi - lo
        seen = set()
        for d in itertools.count(2):
            for k in range(1, d):
                r = Fraction(k, d)
                if r not in seen:
                    seen.add(r)
                    yield lo + width * r


def roundrobin(*iterables) -> Iterator:
    iterators = [iter(it) for it in iterables]
    while iterators:
        alive = []
        for it in iterators:
            try:
                yield next(it)
            except StopIteration:
                continue
            alive.append(it)
        iterators = alive


def some_rational_between(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    return next(rationals_between(lo, hi))


# -- metadata ---------------------------------------------------------------

@dataclass(frozen=True)
class Flags:
    omega_categorical: bool
    quite_o_minimal: bool
    almost_omega_categorical: bool
    exchange_principle: bool
    dcl_equals_acl: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class TypeDescriptor:
    """A one-variable type over the empty set, given by a finite presentation.

    ``formulas`` are in the free variable ``x``.  ``schema`` names an infinite
    part of the presentation that has no single formula (the limit type of the
    constant family); ``isolated`` types have ``formulas`` as isolating set.
    """

    name: str
    formulas: tuple[Formula, ...]
    isolated: bool
    realization: Point | None = None
    schema: str | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "formulas": [format_formula(f) for f in self.formulas],
            "isolated": self.isolated,
            "realization": None if self.realization is None else str(self.realization),
            "schema": self.schema,
        }


# -- the structure interface ------------------------------------------------

class Structure:
    """A computable ordered structure with test-point quantifier elimination.

    Subclasses provide the point model (``cells``, ``interior``, interpretation
    of constants, functions and predicates) and the sampling hooks.
    """

    id: str
    signature: Signature
    flags: Flags
    saturation_note: str
    orthogonality_note: str

    def __init__(self, depth_budget: int = DEFAULT_DEPTH_BUDGET):
        self.depth_budget = depth_budget
        self._cells = lru_cache(maxsize=8192)(self._compute_cells)

    def __repr__(self):
        return f"<structure {self.id}>"

    # hooks ---------------------------------------------------------------
    def _compute_cells(self, anchors: tuple[Point, ...]) -> tuple[tuple[Component, Point], ...]:
        raise NotImplementedError

    def interior(self, comp: Component) -> Iterator[Point]:
        raise NotImplementedError

    def constant(self, index: int) -> Point:
        raise SortError(f"{self.id} has no constants")

    def is_constant(self, p: Point) -> bool:
        return False

    def apply(self, fn: str, p: Point) -> Point:
        raise SortError(f"{self.id} has no function {fn!r}")

    def predicate(self, name: str, p: Point) -> bool:
        raise SortError(f"{self.id} has no predicate {name!r}")

    def sample_automorphism(self, seed: int, fixed: Sequence[Point] = ()):
        raise NotImplementedError

    def list_isolated_1types(self, prefix: int = 3) -> list[TypeDescriptor]:
        raise NotImplementedError

    def grid_points(self, level: int = 0) -> list[Point]:
        """A small finite sample of the universe used for parameter draws."""
        raise NotImplementedError

    def describe(self) -> dict:
        return {
            "id": self.id,
            "signature": self.signature.name,
            "flags": self.flags.as_dict(),
            "saturation_note": self.saturation_note,
            "orthogonality_note": self.orthogonality_note,
        }

    # points --------------------------------------------------------------
    def owns(self, p) -> bool:
        return isinstance(p, POINT_TYPES[self.id])

    def require(self, points: Iterable[Point]) -> None:
        for p in points:
            if not self.owns(p):
                raise SortError(f"{p!r} is not a point of {self.id}")

    def cells(self, anchors: Iterable[Point]) -> tuple[tuple[Component, Point], ...]:
        """Orbit partition of the universe over ``anchors``, in increasing order."""
        uniq = tuple(sorted(set(anchors), key=lambda p: p.key))
        return self._cells(uniq)

    def points_in(self, comp: Component, limit: int = 48) -> Iterator[Point]:
        """Closed endpoints, then up to ``limit`` interior candidates."""
        yield from comp.closed_endpoints()
        if not comp.is_point:
            yield from itertools.islice(self.interior(comp), limit)

    # evaluation ----------------------------------------------------------
    def _check_budget(self, phi: Formula) -> None:
        d = quantifier_depth(phi)
        if d > self.depth_budget:
            raise QuantifierBudgetError(
                f"quantifier depth {d} exceeds budget {self.depth_budget}")

    def compile(self, phi: Formula) -> Callable[[Mapping[str, Point]], bool]:
        """Turn ``phi`` into a predicate on environments (variable -> point)."""
        self._check_budget(phi)
        return self._compile(phi)

    def _compile_term(self, t) -> Callable:
        if isinstance(t, Var):
            name = t.name
            return lambda env: env[name]
        if isinstance(t, Param):
            p = t.point
            if not self.owns(p):
                raise SortError(f"{p!r} is not a point of {self.id}")
            return lambda env: p
        if isinstance(t, Const):
            c = self.constant(t.index)
            return lambda env: c
        if isinstance(t, Apply):
            arg = self._compile_term(t.args[0])
            fn = t.fn
            apply = self.apply

            def run(env):
                v = arg(env)
                return None if v is None else apply(fn, v)
            return run
        raise TypeError(f"not a term: {t!r}")

    def _compile(self, phi: Formula) -> Callable:
        if isinstance(phi, Atom):
            a, b = (self._compile_term(t) for t in phi.args)
            # an atom with an undefined term (partial function) is false
            if phi.rel == "<":
                def run(env):
                    u, v = a(env), b(env)
                    return u is not None and v is not None and u.key < v.key
            else:
                def run(env):
                    u, v = a(env), b(env)
                    return u is not None and u == v
            return run
        if isinstance(phi, PredicateAtom):
            t = self._compile_term(phi.term)
            name = phi.pred
            pred = self.predicate

            def run(env):
                v = t(env)
                return v is not None and pred(name, v)
            return run
        if isinstance(phi, Not):
            body = self._compile(phi.body)
            return lambda env: not body(env)
        if isinstance(phi, BINARY):
            left, right = self._compile(phi.left), self._compile(phi.right)
            if isinstance(phi, Implies):
                return lambda env: (not left(env)) or right(env)
            if isinstance(phi, Or):
                return lambda env: left(env) or right(env)
            return lambda env: left(env) and right(env)
        if isinstance(phi, (Exists, Forall)):
            body = self._compile(phi.body)
            var = phi.var
            outer = tuple(v for v in free_variables(phi))
            fixed = tuple(parameters(phi.body)) + tuple(self.constant(i) for i in constants(phi.body))
            cells = self.cells
            if isinstance(phi, Exists):
                def run(env):
                    anchors = fixed + tuple(env[v] for v in outer)
                    for _, rep in cells(anchors):
                        if body({**env, var: rep}):
                            return True
                    return False
            else:
                def run(env):
                    anchors = fixed + tuple(env[v] for v in outer)
                    for _, rep in cells(anchors):
                        if not body({**env, var: rep}):
                            return False
                    return True
            return run
        raise TypeError(f"not a formula: {phi!r}")

    def eval_formula(self, phi: Formula, params: Mapping[str, Point] | None = None) -> bool:
        """Truth of a sentence (after substituting ``params``) in the designated model."""
        if params:
            phi = substitute(phi, params)
        free = free_variables(phi)
        if free:
            raise ValueError(f"formula has free variables {free}")
        return self.compile(phi)({})

    def definable_set(self, phi: Formula, params: Mapping[str, Point] | None = None,
                      var: str | None = None) -> DefinableSet:
        """Exact solution set of a one-variable formula, in convex normal form."""
        if params:
            phi = substitute(phi, params)
        free = free_variables(phi)
        if len(free) > 1 or (var is not None and free and free != (var,)):
            raise ValueError(f"expected one free variable, found {free}")
        x = free[0] if free else (var or "x")
        check = self.compile(phi)
        anchors = tuple(parameters(phi)) + tuple(self.constant(i) for i in constants(phi))
        cells = self.cells(anchors)
        return merge_cells(self.id, ((comp, check({x: rep})) for comp, rep in cells))

    # types ---------------------------------------------------------------
    def type_set(self, t: TypeDescriptor) -> DefinableSet:
        phi = conj(*t.formulas) if t.formulas else eq(Var("x"), Var("x"))
        return self.definable_set(phi, var="x")

    def satisfies_schema(self, schema: str | None, p: Point) -> bool:
        if schema is None:
            return True
        raise ValueError(f"{self.id} has no type schema {schema!r}")

    def realize(self, t: TypeDescriptor, limit: int = 64) -> Point:
        """A point satisfying every formula (and the schema) of ``t``."""
        sol = self.type_set(t)
        if sol.is_empty:
            raise InconsistentTypeError(f"type {t.name!r} has no solutions")
        for comp in sol:
            for p in self.points_in(comp, limit):
                if self.satisfies_schema(t.schema, p):
                    return p
        raise InconsistentTypeError(
            f"type {t.name!r} is not realized among the first {limit} candidates")

    def pick_point(self, sol: DefinableSet) -> Point:
        for comp in sol:
            for p in self.points_in(comp, 1):
                return p
        raise InconsistentTypeError("empty definable set")


def plain_cells(anchors: tuple[Point, ...], between) -> tuple[tuple[Component, Point], ...]:
    """Cells of a dense order without endpoints over sorted ``anchors``.

    ``between(lo, hi)`` returns a point strictly inside the open interval, with
    ``None`` standing for an infinite end.
    """
    cells = []
    prev = None
    for a in anchors:
        cells.append((Component(prev, a, True, True), between(prev, a)))
        cells.append((Component.point(a), a))
        prev = a
    cells.append((Component(prev, None, True, True), between(prev, None)))
    return tuple(cells)
