import itertools

import pytest

from origamis.invariants import (
    InvariantError,
    PUBLISHED_SUMMARY,
    Stratum,
    corner_walk_orders,
    double_cover_orders,
    galois_report,
    invariant_key,
    origami_genus,
    render_report,
    stratum,
)
from origamis.model import Origami, is_connected
from origamis.perms import Permutation, SignVector


def all_connected(d):
    perms = [Permutation(p) for p in itertools.permutations(range(1, d + 1))]
    for x in perms:
        for y in perms:
            for mask in range(1 << d):
                eps = SignVector(
                    tuple(1 if mask >> i & 1 == 0 else -1 for i in range(d))
                )
                o = Origami(x, y, eps)
                if is_connected(o):
                    yield o


def test_examples():
    assert str(stratum(Origami.parse("x=(1); y=(1); eps=+"))) == "A1(0)"
    st = stratum(Origami.parse("x=(1,2); y=(1,2); eps=+-"))
    assert str(st) == "Q0(-1,-1,-1,-1)"
    assert st.genus == 0 and not st.abelian
    assert origami_genus(Origami.parse("x=(1); y=(1); eps=+")) == 1


def test_abelian_single_commutator_cycle(censuses):
    """Abelian with z = xyx^-1y^-1 a single L-cycle: quadratic order
    2(L-1).  (A single 4-cycle is impossible -- a commutator is even --
    so the smallest witness is the 5-cycle: order 8, genus 3.)"""
    found = False
    for cl in censuses[5].classes:
        s = stratum(cl.canonical_rep)
        if s.abelian and s.orders == (8,):
            assert s.genus == 3
            found = True
    assert found


def test_double_cover_route_equals_corner_walk_d4():
    """The fast vertex-pairing computation agrees with the elementary
    corner walk on every connected origami of degree <= 4."""
    for d in range(1, 5):
        for o in all_connected(d):
            assert stratum(o) == stratum(o, oracle=True)


def test_orders_sum_rule_d5_census(censuses):
    for d, c in censuses.items():
        for cl in c.classes:
            s = stratum(cl.canonical_rep)
            assert sum(s.orders) == 4 * s.genus - 4
            assert all(o >= -1 for o in s.orders)
            if s.abelian:
                assert all(o % 2 == 0 for o in s.orders)
            assert s.abelian == cl.abelian


def test_stratum_constant_on_members_d3():
    from origamis.classify import census

    c = census(3)
    for cl in c.classes:
        strata = {
            stratum(Origami(cl.x, Permutation(y), SignVector(e)))
            for y, e in cl.members
        }
        assert len(strata) == 1


def test_disconnected_rejected():
    with pytest.raises(InvariantError):
        stratum(Origami.parse("x=(1)(2); y=(1)(2); eps=++"))


def test_invariant_key_mirror_invariance(censuses, actions, all_components):
    for d in censuses:
        comps = all_components[d]
        a = actions[d]
        comp_of = {}
        for comp in comps:
            for i in comp.class_ids:
                comp_of[i] = comp.component_id
        keys = {comp.component_id: invariant_key(comp, censuses[d]) for comp in comps}
        for comp in comps:
            img = comp_of[a.mirror[comp.class_ids[0]]]
            assert keys[img] == keys[comp.component_id]


def test_reports_empty_through_degree5(censuses, actions, all_components):
    for d in censuses:
        rep = galois_report(censuses[d], actions[d], all_components[d])
        assert rep["ambiguous_keys"] == []
        if d == 2:
            # honest d=2 abelian class count flagged against the published 2
            assert any("erratum" in n for n in rep["notes"])
        else:
            assert rep["notes"] == []


def test_degree6_report(census6, action6):
    from origamis.curves import components

    comps = components(action6)
    rep = galois_report(census6, action6, comps)
    assert rep["summary"]["classes"] == (490, 2316)
    assert rep["summary"]["components"] == (28, 88)
    rows = {
        (r["stratum"], r["index"], r["valency"]): (len(r["components"]), r["relationship"])
        for r in rep["ambiguous_keys"]
    }
    # the published detail table, rows 6-1..6-13
    expected = {
        ("A3(0,8)", 15, "(3^5|2^7,1|5,4,3^2)"): 2,
        ("Q1(-1,-1,0,0,0,2)", 12, "(3^4|2^6|6,3,2,1)"): 2,
        ("Q2(-1,-1,0,6)", 12, "(3^4|2^6|6,3,2,1)"): 2,
        ("Q2(0,0,2,2)", 12, "(3^4|2^6|6,3,2,1)"): 3,
        ("Q3(2,6)", 12, "(3^4|2^6|6,3,2,1)"): 2,
        ("Q2(-1,-1,3,3)", 15, "(3^5|2^7,1|6,5,3,1)"): 2,
        ("Q2(-1,-1,3,3)", 15, "(3^5|2^7,1|5,4,3^2)"): 2,
        ("Q3(-1,9)", 22, "(3^7,1|2^11|6,5,4^2,3)"): 2,
        ("Q2(-1,-1,0,6)", 24, "(3^8|2^12|6,5,4^2,3,2)"): 2,
        ("Q2(-1,-1,-1,7)", 27, "(3^9|2^13,1|6^2,5,4,3^2)"): 3,
        ("Q2(-1,0,1,4)", 36, "(3^12|2^18|6^2,5^2,4^2,3^2)"): 3,
        ("Q3(1,7)", 54, "(3^18|2^27|6^4,5^3,4^3,3)"): 3,
        ("Q3(-1,9)", 66, "(3^22|2^33|6^6,5^3,4^3,3)"): 4,
    }
    for key, n in expected.items():
        assert key in rows, key
        assert rows[key][0] == n, key
    # one extra honest key beyond the published table
    extra = set(rows) - set(expected)
    assert extra == {("A3(4,4)", 9, "(3^3|2^4,1|4,3,2)")}
    assert any("A3(4,4)" in n for n in rep["notes"])


def test_render_formats(censuses, actions, all_components):
    rep = galois_report(censuses[4], actions[4], all_components[4])
    text = render_report(rep, "text")
    assert "abelian=26" in text
    csv = render_report(rep, "csv")
    assert csv.splitlines()[0].startswith("no,kind,stratum")
    js = render_report(rep, "json")
    import json

    assert json.loads(js)["summary"]["degree"] == 4
    with pytest.raises(ValueError):
        render_report(rep, "xml")
