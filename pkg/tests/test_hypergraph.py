import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hg_reference import plain_set_t0, plain_set_t2, plain_t0, plain_t2
from sepmod.errors import PreconditionError
from sepmod.hypergraph import (
    Hypergraph, set_t0_separable, set_t2_separable, t0_separable, t2_separable,
)


@st.composite
def hypergraphs(draw):
    n = draw(st.integers(2, 7))
    X = list(range(n))
    Y = draw(st.lists(st.frozensets(st.sampled_from(X)), max_size=10))
    return Hypergraph.of(X, Y)


def test_chain_example():
    # nested edges: T0 one way only, never T2
    H = Hypergraph.of([1, 2, 3], [[1], [1, 2], [1, 2, 3]])
    assert t0_separable(H, 1, 2).verdict
    assert not t0_separable(H, 2, 1).verdict
    assert not t2_separable(H, 1, 2).verdict
    assert t0_separable(H, 1, 2).witnesses == (frozenset({1}),)


def test_relative_to_z():
    H = Hypergraph.of([1, 2, 3], [[1, 3], [2, 3]])
    assert not t2_separable(H, 1, 2).verdict
    sep = t2_separable(H, 1, 2, Z={3})
    assert sep.verdict and sep.to_json()["witnesses"] == [[1, 3], [2, 3]]
    assert set_t2_separable(H, {1}, {2}, Z={3}).verdict


@pytest.mark.parametrize("call,code", [
    (lambda H: t0_separable(H, 1, 9), "not-in-X"),
    (lambda H: t0_separable(H, 1, 1), "equal-elements"),
    (lambda H: t0_separable(H, 1, 2, Z={2}), "x2-in-Z"),
    (lambda H: t2_separable(H, 1, 2, Z={1}), "element-in-Z"),
    (lambda H: set_t0_separable(H, {1, 2}, {2}), "overlap-outside-Z"),
    (lambda H: set_t0_separable(H, {1}, {2}, Z={2}), "X2-inside-Z"),
    (lambda H: set_t2_separable(H, {1}, {2}, Z={1}), "X1-inside-Z"),
])
def test_preconditions(call, code):
    H = Hypergraph.of([1, 2, 3], [[1]])
    with pytest.raises(PreconditionError) as exc:
        call(H)
    assert exc.value.code == code


def test_edges_must_lie_in_x():
    with pytest.raises(ValueError):
        Hypergraph.of([1], [[1, 2]])


def test_from_json():
    H, Z = Hypergraph.from_json(json.loads('{"X": [1, 2], "Y": [[1]], "Z": [2]}'))
    assert H.X == {1, 2} and Z == {2}
    with pytest.raises(ValueError):
        Hypergraph.from_json({"X": [], "Y": [], "W": []})


@settings(max_examples=200, deadline=None)
@given(H=hypergraphs(), data=st.data())
def test_empty_z_reduces_to_plain_definitions(H, data):
    X = sorted(H.X)
    x1, x2 = data.draw(st.sampled_from(X)), data.draw(st.sampled_from(X))
    if x1 != x2:
        assert t0_separable(H, x1, x2).verdict == plain_t0(H.Y, x1, x2)
        assert t2_separable(H, x1, x2).verdict == plain_t2(H.Y, x1, x2)
    X1 = data.draw(st.frozensets(st.sampled_from(X), min_size=1))
    X2 = data.draw(st.frozensets(st.sampled_from(X), min_size=1))
    if not X1 & X2:
        assert set_t0_separable(H, X1, X2).verdict == plain_set_t0(H.Y, X1, X2)
        assert set_t2_separable(H, X1, X2).verdict == plain_set_t2(H.Y, X1, X2)


@settings(max_examples=200, deadline=None)
@given(H=hypergraphs(), data=st.data())
def test_t2_implies_t0_both_ways_and_z_monotone(H, data):
    X = sorted(H.X)
    x1, x2 = data.draw(st.lists(st.sampled_from(X), min_size=2, max_size=2, unique=True))
    rest = [x for x in X if x not in (x1, x2)]
    Z = data.draw(st.frozensets(st.sampled_from(rest))) if rest else frozenset()
    bigger = Z | (data.draw(st.frozensets(st.sampled_from(rest))) if rest else frozenset())
    t2 = t2_separable(H, x1, x2, Z).verdict
    if t2:
        assert t0_separable(H, x1, x2, Z).verdict and t0_separable(H, x2, x1, Z).verdict
        assert t2_separable(H, x1, x2, bigger).verdict
    if t0_separable(H, x1, x2, Z).verdict:
        assert t0_separable(H, x1, x2, bigger).verdict
    # singletons: set and element versions agree
    assert set_t0_separable(H, {x1}, {x2}, Z).verdict == t0_separable(H, x1, x2, Z).verdict
    assert set_t2_separable(H, {x1}, {x2}, Z).verdict == t2


def test_t2_is_symmetric():
    rng = random.Random(5)
    for _ in range(200):
        X = list(range(5))
        H = Hypergraph.of(X, [[x for x in X if rng.random() < 0.4] for _ in range(4)])
        for a in X:
            for b in X:
                if a != b:
                    assert t2_separable(H, a, b).verdict == t2_separable(H, b, a).verdict
