import pytest

from sepmod.errors import HypothesesUnmetError, PreconditionError
from sepmod.points import Pair, Rat, Single, Tier
from sepmod.separability import (
    SeparabilityQuery, check, criterion_t0, criterion_t2, qo_equivalence_report, qo_finite_sets,
    saturated_pair_separability,
)


def q(sid, mode, A, B, z=None):
    return SeparabilityQuery.make(sid, mode, A, B, z)


def test_dlo_always_separable():
    assert check(q("dlo", "t0", [Rat(0)], [Rat(1)])).answer
    assert check(q("dlo", "t2", [Rat(0), Rat(1)], [Rat(2)])).answer


def test_ex1_fibre_orientation():
    a, fa = Pair(2, 3), Single(2)
    v = criterion_t0(q("ex1", "t0", [a], [fa]))
    assert not v.answer
    assert v.certificate["offending"] == [
        {"point": "@{2:P2}", "formula": "x = f(@{(2,3)})", "bound": 1}]
    assert v.certificate["references"] == ["example:ex1", "note:suspected-transposition"]
    assert criterion_t0(q("ex1", "t0", [fa], [a])).answer
    assert not criterion_t2(q("ex1", "t2", [a], [fa])).answer


def test_ex1_other_fibre_has_no_citation():
    v = criterion_t2(q("ex1", "t2", [Pair(2, 3)], [Single(5)]))
    assert v.answer and "references" not in v.certificate


def test_ex1_z_absorbs_the_image():
    assert criterion_t2(q("ex1", "t2", [Pair(2, 3)], [Pair(2, 5)], [Single(2)])).answer
    assert not criterion_t2(q("ex1", "t2", [Pair(2, 3)], [Pair(2, 5)])).answer


def test_ehr_constants_block_t2_unless_in_z():
    v = criterion_t2(q("ehr", "t2", [Tier(1, 1)], [Tier(2, 1)]))
    assert not v.answer
    assert v.certificate["offending"][0]["point"] == "@{0;0}"
    assert "intensional" in v.certificate
    assert criterion_t2(q("ehr", "t2", [Tier(1, 1)], [Tier(2, 1)], "acl-empty")).answer
    # T0 needs only that B avoids acl(A): constants in A's closure are harmless
    assert criterion_t0(q("ehr", "t0", [Tier(1, 1)], [Tier(2, 1)])).answer
    assert not criterion_t0(q("ehr", "t0", [Tier(1, 1)], [Tier(3, 0)])).answer


@pytest.mark.parametrize("mode,A,B,z,code", [
    ("t0", [], [Rat(1)], None, "empty-side"),
    ("t0", [Rat(1)], [Rat(1)], None, "overlap-outside-Z"),
    ("t0", [Rat(0)], [Rat(1)], [Rat(1)], "B-inside-Z"),
    ("t2", [Rat(1)], [Rat(0)], [Rat(1)], "A-inside-Z"),
])
def test_query_preconditions(mode, A, B, z, code):
    with pytest.raises(PreconditionError) as exc:
        check(q("dlo", mode, A, B, z))
    assert exc.value.code == code


def test_foreign_points_rejected():
    with pytest.raises(Exception):
        q("dlo", "t0", [Tier(0, 0)], [Rat(1)])


def test_saturated_pair_ehr_constant_types():
    v = saturated_pair_separability("ehr", [Tier(1, 1)], [Tier(2, 1)])
    assert not v.answer
    assert not v.certificate["condition_1"] and not v.certificate["condition_2"]
    assert v.certificate["failing_types"] == ["x = c0", "x = c1"]


def test_saturated_pair_dlo():
    v = saturated_pair_separability("dlo", [Rat(1)], [Rat(2)])
    assert v.answer
    assert v.certificate["type_coverage"] == [
        {"type": "x = x", "outside_acl_A": "@{0}", "outside_acl_B": "@{0}", "covered": True}]


def test_six_way_report():
    r = qo_equivalence_report("ex1", Pair(2, 3), Single(2))
    assert r.conditions == {"1": False, "2": True, "3": False, "4": True, "5": False, "6": False}
    assert not r.consistent and not r.theorem_applies
    r = qo_equivalence_report("ehr", Tier(1, 1), Tier(2, 1), "acl-empty")
    assert r.consistent and r.theorem_applies and all(r.conditions.values())
    with pytest.raises(PreconditionError) as exc:
        qo_equivalence_report("ehr", Tier(1, 1), Tier(2, 1))
    assert exc.value.code == "Z-not-acl-closed"
    with pytest.raises(PreconditionError) as exc:
        qo_equivalence_report("ehr", Tier(1, 0), Tier(2, 1), "acl-empty")
    assert exc.value.code == "element-in-Z"


def test_finite_sets_flag_gate():
    with pytest.raises(HypothesesUnmetError) as exc:
        qo_finite_sets("ex1", [Pair(2, 3)], [Single(2)])
    assert str(exc.value).startswith("theorem hypotheses unmet: quite_o_minimal = false")
    assert exc.value.code == "theorem-hypotheses-unmet"


def test_finite_sets_pairwise():
    v = qo_finite_sets("dlo", [Rat(0), Rat(1)], [Rat(2)])
    assert v.answer and v.certificate["matrix"] == [[[]], [[]]]
    v = qo_finite_sets("dlo", [Rat(0), Rat(1)], [Rat(1)])
    assert not v.answer and v.certificate["matrix"] == [[[]], [["@{1}"]]]
    assert qo_finite_sets("ehr", [Tier(0, 1)], [Tier(1, 1)], "acl-empty").answer
    assert not qo_finite_sets("ehr", [Tier(0, 1)], [Tier(0, 1), Tier(1, 1)], "acl-empty").answer
