import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pretorsion.abcat import Obj
from pretorsion.torsion import enumerate_torsion_pairs
from pretorsion.typea import (
    Interval,
    TypeA,
    ar_order,
    ar_quiver,
    ext_middle,
    injectives,
    interval_ext_dim,
    interval_hom_dim,
    interval_reject,
    interval_trace,
    intervals,
    parse_interval,
    projectives,
    serre_classes,
    simples,
    torsion_classes_by_closure,
)


def interval_pairs(n):
    ivs = st.tuples(st.integers(1, n), st.integers(1, n)).map(lambda ab: Interval(min(ab), max(ab)))
    return st.tuples(ivs, ivs)


@pytest.mark.parametrize("text", ["[1,2]", "12", "1..2"])
def test_parse_interval_syntaxes(text):
    assert parse_interval(text, 3) == Interval(1, 2)


@pytest.mark.parametrize("text", ["[2,1]", "[0,1]", "[1,4]", "zz"])
def test_parse_interval_rejects(text):
    with pytest.raises(ValueError):
        parse_interval(text, 3)


def test_interval_counts_and_special_modules():
    assert len(intervals(4)) == 10
    assert projectives(3) == [Interval(1, 3), Interval(2, 3), Interval(3, 3)]
    assert sorted(injectives(3)) == [Interval(1, 1), Interval(1, 2), Interval(1, 3)]
    assert simples(2) == [Interval(1, 1), Interval(2, 2)]


def test_ar_order_kA2():
    # display order: simple projective, projective-injective, simple injective
    assert ar_order(2) == [Interval(2, 2), Interval(1, 2), Interval(1, 1)]


def test_ar_quiver_rows():
    rows = ar_quiver(3).rows()
    assert [len(r) for r in rows] == [3, 2, 1]
    assert "digraph" in ar_quiver(3).to_dot()


@settings(max_examples=80, deadline=None)
@given(pair=interval_pairs(4), p=st.sampled_from([2, 3]))
def test_hom_and_ext_formulas_match_representation_solves(pair, p):
    s, t = pair
    cat = TypeA(4, p)
    rs, rt = cat.to_rep(Obj.of(s)), cat.to_rep(Obj.of(t))
    assert len(cat.rep_hom_basis(rs, rt)) == interval_hom_dim(s, t)
    assert cat.rep_ext_dim(rs, rt) == interval_ext_dim(s, t)
    if interval_ext_dim(s, t):
        assert cat.iso_type(cat.rep_extensions(rs, rt)[0]) == Obj(ext_middle(s, t))


def test_ext_beyond_adjacent_intervals():
    # [1,1] -> [1,2] -> [2,2]: the familiar extension of simples
    assert interval_ext_dim(Interval(1, 1), Interval(2, 2)) == 1
    assert ext_middle(Interval(1, 1), Interval(2, 2)) == (Interval(1, 2),)
    # overlapping case with two middle summands
    assert ext_middle(Interval(1, 2), Interval(2, 3)) == (Interval(1, 3), Interval(2, 2))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_trace_and_reject_match_oracle(data):
    cat = TypeA(3)
    iv = data.draw(st.sampled_from(cat.indecomposables()))
    members = data.draw(st.sets(st.sampled_from(cat.indecomposables())))
    X = Obj.of(iv)
    sub, _ = cat.trace(X, sorted(members))
    t = interval_trace(iv, members)
    assert sub == (Obj.of(t) if t else Obj())
    quot, _ = cat.reject(X, sorted(members))
    r = interval_reject(iv, members)
    assert quot == (Obj.of(r) if r else Obj())


def test_combinatorial_trace_type_matches_oracle(ka3):
    for X in ka3.universe():
        for k in range(3):
            for members in itertools.combinations(ka3.indecomposables(), k):
                assert ka3.combinatorial_trace_type(X, members) == ka3.trace_type(X, members)


def test_serre_classes_are_supports():
    for n in (1, 2, 3):
        classes = serre_classes(n)
        assert len(classes) == 2**n
        for verts, S in classes:
            assert all(set(range(iv.a, iv.b + 1)) <= set(verts) for iv in S.members)


def test_closure_enumeration_agrees_with_oracle_filter():
    for n in (1, 2, 3, 4):
        oracle = {tp.T.members for tp in enumerate_torsion_pairs(TypeA(n))}
        assert set(torsion_classes_by_closure(n)) == oracle


def test_closure_enumeration_catalan_five_and_six():
    # Catalan numbers C_6 = 132 and C_7 = 429
    assert len(torsion_classes_by_closure(5)) == 132
    assert len(torsion_classes_by_closure(6)) == 429


def test_universe_cap_for_n4():
    assert len(TypeA(3).universe()) == 2**6
    # 0, ten indecomposables, 45 pairs of distinct ones
    assert len(TypeA(4).universe()) == 56
