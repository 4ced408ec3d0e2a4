"""Finite matrix groups: closure, recognition, and subgroup tables."""

import random
from collections import Counter

import pytest

from kmlat.errors import NotASubgroup, NotFound, SizeCapExceeded
from kmlat.gf import make_field
from kmlat.groups import (FiniteGroup, GroupType, cayley_closure_tool, closure,
                          dickson_table, find_subgroup_of_type,
                          nonsplit_torus, order_available, pair_closure_indices,
                          recognize, sl2_group, torus_normalizer)
from kmlat.laurent import LaurentPoly
from kmlat.serretree import Mat2


def sl2_order(q):
    return q * (q - 1) * (q + 1)


@pytest.mark.parametrize("q,a", [(2, 1), (3, 1), (4, 2), (5, 1)])
def test_sl2_group_order(q, a):
    spec = make_field(2 if q in (2, 4) else q, a)
    g = sl2_group(spec)
    assert g.order == sl2_order(q)
    one = LaurentPoly.one(spec)
    for m in g:
        assert m.det() == one


def test_closure_cap():
    spec = make_field(5)
    gens = list(sl2_group(spec).elements)[:6]
    with pytest.raises(SizeCapExceeded):
        closure(gens, cap=10)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_nonsplit_torus_is_cyclic(q):
    spec = make_field(2, 2) if q == 4 else make_field(q)
    t = nonsplit_torus(spec)
    assert t.order == q + 1
    assert t.is_cyclic()
    rec = recognize(t)
    assert rec == GroupType("Cyclic", q + 1)
    amb = sl2_group(spec)
    assert amb.is_subgroup(t)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_torus_normalizer(q):
    spec = make_field(q)
    n = torus_normalizer(spec)
    t = nonsplit_torus(spec)
    assert n.order == 2 * (q + 1)
    assert n.is_subgroup(t)
    assert n.is_normal(t)
    rec = recognize(n)
    assert rec.kind == "Dicyclic" and rec.param == 2 * (q + 1)
    assert n.unique_involution() is not None


def test_group_basics():
    spec = make_field(3)
    g = sl2_group(spec)
    t = nonsplit_torus(spec)
    assert g.index(t) == g.order // t.order
    assert not g.is_abelian()
    z = g.center()
    assert z.order == 2
    d = g.derived_subgroup()
    # SL2(3) has derived subgroup the quaternion group of order 8
    assert d.order == 8
    with pytest.raises(NotASubgroup):
        t.index(g)
    cosets = g.cosets(t)
    assert len(cosets) == g.order // t.order


def test_recognize_small_types():
    spec = make_field(3)
    g = sl2_group(spec)
    assert recognize(g) == GroupType("SL2(3)")
    assert recognize(sl2_group(make_field(5))) == GroupType("SL2(5)")
    z = g.center()
    assert recognize(z) == GroupType("Cyclic", 2)
    ident = g.identity()
    triv = FiniteGroup(spec, frozenset([ident]), (ident,))
    assert recognize(triv) == GroupType("Cyclic", 1)


def test_recognize_klein_four_group():
    spec = make_field(2, 2)
    one = LaurentPoly.one(spec)
    zero = LaurentPoly.zero(spec)
    u1 = Mat2(spec, one, one, zero, one)
    u2 = Mat2(spec, one, LaurentPoly.const(spec.element(2)), zero, one)
    k = FiniteGroup(spec, closure([u1, u2]), (u1, u2))
    assert k.order == 4
    assert recognize(k) == GroupType("Dihedral", 4)


def test_profiles_match_independent_reconstruction():
    """Order profiles of SL2(3)/SL2(5) recomputed from the full groups."""
    from kmlat.groups import PROFILE_SL2_3, PROFILE_SL2_5
    for q, profile in ((3, PROFILE_SL2_3), (5, PROFILE_SL2_5)):
        g = sl2_group(make_field(q))
        counted = Counter(g.element_order(m) for m in g)
        assert dict(counted) == dict(profile)


def test_order_available():
    spec = make_field(7)
    for d in (1, 2, 3, 4, 6, 7, 8, 14):
        assert order_available(spec, d)
    for d in (5, 9, 16, 21, 49):
        assert not order_available(spec, d)


@pytest.mark.parametrize("q,kind,order", [
    (5, "SL2(3)", 24), (11, "SL2(3)", 24), (7, "2S4", 48),
    (11, "SL2(5)", 120), (19, "SL2(5)", 120),
])
def test_find_subgroup_of_type(q, kind, order):
    spec = make_field(q)
    h = find_subgroup_of_type(spec, kind)
    assert h is not None
    assert h.order == order
    expected = {"SL2(3)": "SL2(3)", "SL2(5)": "SL2(5)",
                "2S4": "BinaryOctahedral"}[kind]
    assert recognize(h).kind == expected
    amb = sl2_group(spec) if q <= 11 else None
    if amb is not None:
        assert amb.is_subgroup(h)


def test_find_subgroup_of_type_absent():
    assert find_subgroup_of_type(make_field(13), "SL2(5)") is None
    assert find_subgroup_of_type(make_field(13), "2S4") is None


def test_dickson_table_q8():
    spec = make_field(2, 3)
    rows = dickson_table(spec, "sl2")
    div = {(r.type, r.order) for r in rows if r.div_q_plus_1}
    assert div == {("Cyclic(9)", 9), ("Dihedral(18)", 18)}


def test_dickson_table_q11_exceptional():
    rows = dickson_table(make_field(11), "sl2")
    names = {r.type for r in rows}
    assert "SL2(3)" in names and "SL2(5)" in names
    assert "2S4" not in names


def test_dickson_table_q7():
    rows = dickson_table(make_field(7), "sl2")
    names = {r.type for r in rows}
    assert "2S4" in names and "SL2(5)" not in names
    pgl = dickson_table(make_field(7), "pgl2")
    s4 = [r for r in pgl if r.type.startswith("S4")]
    assert s4 and all("outside" not in r.type for r in s4)


def test_cayley_closure_tool():
    spec = make_field(3)
    g = sl2_group(spec)
    elems, mul = cayley_closure_tool(g)
    assert len(elems) == g.order
    assert elems[0] == g.identity()
    n = g.order
    for i in (0, 1, n // 2, n - 1):
        assert mul[0][i] == i and mul[i][0] == i
    idx = pair_closure_indices(mul, 1, 2)
    sub = frozenset(elems[i] for i in idx)
    assert g.is_subgroup(FiniteGroup(spec, sub, ()))
