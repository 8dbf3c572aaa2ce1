"""Finitely described order automorphisms used as a soundness oracle."""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ..points import Pair, Point, Rat, Single, Tier


@dataclass(frozen=True)
class PiecewiseLinear:
    """Increasing bijection of Q through the breakpoints, slope 1 outside them."""

    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]

    def __post_init__(self):
        assert len(self.xs) == len(self.ys)
        assert all(a < b for a, b in zip(self.xs, self.xs[1:]))
        assert all(a < b for a, b in zip(self.ys, self.ys[1:]))

    def __call__(self, x: Fraction) -> Fraction:
        xs, ys = self.xs, self.ys
        if not xs:
            return x
        if x <= xs[0]:
            return ys[0] + (x - xs[0])
        if x >= xs[-1]:
            return ys[-1] + (x - xs[-1])
        i = bisect.bisect_right(xs, x)
        x0, x1, y0, y1 = xs[i - 1], xs[i], ys[i - 1], ys[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def describe(self) -> list:
        return [[str(x), str(y)] for x, y in zip(self.xs, self.ys)]


def _inside(rng: random.Random, lo: Fraction | None, hi: Fraction | None) -> Fraction:
    if lo is not None and hi is not None:
        return lo + (hi - lo) * Fraction(rng.randint(1, 31), 32)
    step = Fraction(rng.randint(1, 16), rng.choice([1, 2, 3, 4]))
    if lo is None and hi is None:
        return Fraction(rng.randint(-16, 16), rng.choice([1, 2, 4]))
    return hi - step if lo is None else lo + step


def random_pl(rng: random.Random, fixed: Sequence[Fraction] = (),
              lo: Fraction | None = None, hi: Fraction | None = None,
              moves: int = 2) -> PiecewiseLinear:
    """A random increasing bijection of (lo, hi) fixing every point of ``fixed``.

    Finite ends ``lo``/``hi`` are fixed as well, so the map restricts to the
    open interval.  Each gap between fixed points gets ``moves`` breakpoints.
    """
    anchors = sorted(set(fixed) | {b for b in (lo, hi) if b is not None})
    bounds = ([None] if lo is None else []) + anchors + ([None] if hi is None else [])
    segments = list(zip(bounds, bounds[1:]))
    xs, ys = [], []
    for s, e in segments:
        if s is not None and e is not None and s >= e:
            continue
        px = sorted({_inside(rng, s, e) for _ in range(moves)})
        py = sorted({_inside(rng, s, e) for _ in range(len(px))})
        while len(py) < len(px):
            py = sorted(set(py) | {_inside(rng, s, e)})
        xs.extend(px)
        ys.extend(py)
    pts = sorted(list(zip(xs, ys)) + [(a, a) for a in anchors])
    return PiecewiseLinear(tuple(x for x, _ in pts), tuple(y for _, y in pts))


@dataclass(frozen=True)
class Automorphism:
    """Callable automorphism with a JSON-able description."""

    structure: str
    seed: int
    fn: Callable[[Point], Point]
    description: dict

    def __call__(self, p: Point) -> Point:
        return self.fn(p)


def dlo_automorphism(seed: int, fixed: Sequence[Point] = ()) -> Automorphism:
    rng = random.Random(seed)
    g = random_pl(rng, [p.q for p in fixed])
    return Automorphism("dlo", seed, lambda p: Rat(g(p.q)), {"map": g.describe()})


def ehr_automorphism(seed: int, fixed: Sequence[Point] = ()) -> Automorphism:
    """Fixes every constant (i, 0); moves points inside blocks and inside tier 1."""
    rng = random.Random(seed)
    tier0 = [p.q for p in fixed if p.t == 0]
    tier1 = [p.q for p in fixed if p.t == 1]
    below = random_pl(rng, [q for q in tier0 if q < 0], hi=Fraction(0))
    generic = random_pl(rng, [], lo=Fraction(0), hi=Fraction(1))
    blocks = {}
    for q in tier0:
        if q >= 0:
            i = q.numerator // q.denominator
            blocks.setdefault(i, set()).add(q)
    block_maps = {
        i: random_pl(rng, sorted(qs), lo=Fraction(i), hi=Fraction(i + 1))
        for i, qs in sorted(blocks.items())
    }
    top = random_pl(rng, tier1)

    def fn(p: Tier) -> Tier:
        if p.t == 1:
            return Tier(top(p.q), 1)
        q = p.q
        if q < 0:
            return Tier(below(q), 0)
        i = q.numerator // q.denominator
        if i in block_maps:
            return Tier(block_maps[i](q), 0)
        return Tier(i + generic(q - i), 0)

    desc = {
        "below_c0": below.describe(),
        "generic_block": generic.describe(),
        "blocks": {str(i): m.describe() for i, m in block_maps.items()},
        "tier1": top.describe(),
    }
    return Automorphism("ehr", seed, fn, desc)


def ex1_automorphism(seed: int, fixed: Sequence[Point] = ()) -> Automorphism:
    """A base map on P2 lifted to the fibres, so that f commutes with it."""
    rng = random.Random(seed)
    bases = {p.n if isinstance(p, Pair) else p.q for p in fixed}
    fibre_fixed: dict = {}
    for p in fixed:
        if isinstance(p, Pair):
            fibre_fixed.setdefault(p.n, set()).add(p.m)
    base = random_pl(rng, sorted(bases))
    fibre_maps = {n: random_pl(rng, sorted(ms)) for n, ms in sorted(fibre_fixed.items())}
    generic = random_pl(rng, [])

    def fn(p: Point) -> Point:
        if isinstance(p, Single):
            return Single(base(p.q))
        return Pair(base(p.n), fibre_maps.get(p.n, generic)(p.m))

    desc = {
        "base": base.describe(),
        "fibres": {str(n): m.describe() for n, m in fibre_maps.items()},
        "generic_fibre": generic.describe(),
    }
    return Automorphism("ex1", seed, fn, desc)
