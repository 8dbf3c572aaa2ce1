from fractions import Fraction

import pytest
from hypothesis import given

from sepmod.errors import PointSyntaxError
from sepmod.points import (
    Pair, Rat, Single, Tier, frac, parse_point, parse_points, sort_points, structure_of,
)
from strategies import points


@pytest.mark.parametrize("text,sid,expected", [
    ("@{1/2}", "dlo", Rat(Fraction(1, 2))),
    ("@{-3}", "dlo", Rat(-3)),
    ("@{1/2;1}", "ehr", Tier(Fraction(1, 2), 1)),
    ("@{(2,3)}", "ex1", Pair(2, 3)),
    ("@{2:P2}", "ex1", Single(2)),
])
def test_parse_literal(text, sid, expected):
    assert parse_point(text, sid) == expected


@pytest.mark.parametrize("text,sid", [
    ("@{0.5}", "dlo"), ("@{1/0}", "dlo"), ("@{1;2}", "ehr"), ("@{1}", "ehr"),
    ("@{(1,2,3)}", "ex1"), ("@{2:P3}", "ex1"), ("1/2", "dlo"),
])
def test_bad_literal(text, sid):
    with pytest.raises(PointSyntaxError):
        parse_point(text, sid)


def test_frac_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        frac(0.5)
    with pytest.raises(TypeError):
        frac(True)
    assert frac("6/4") == Fraction(3, 2)


def test_orders():
    # P2 sits above all of P1; tier 1 above tier 0; P1 is lexicographic
    assert Pair(100, 100).key < Single(-100).key
    assert Tier(100, 0).key < Tier(-100, 1).key
    assert Pair(1, 5).key < Pair(2, -5).key < Pair(2, -4).key
    pts = [Single(0), Pair(0, 1), Pair(0, 0), Single(-1)]
    assert sort_points(pts) == [Pair(0, 0), Pair(0, 1), Single(-1), Single(0)]


def test_parse_points_list():
    assert parse_points("@{1}, @{1/3}", "dlo") == [Rat(1), Rat(Fraction(1, 3))]


@given(points("dlo") | points("ehr") | points("ex1"))
def test_literal_round_trip(p):
    sid = structure_of(p)
    q = parse_point(str(p), sid)
    assert q == p and hash(q) == hash(p) and q.key == p.key
