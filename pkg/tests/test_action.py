import pytest

from origamis.action import (
    act_mirror,
    act_S,
    act_T,
    build_action,
    transform_S,
    transform_T,
    transform_mirror,
)
from origamis.classify import census, find_class
from origamis.model import Origami, is_abelian
from origamis.perms import Permutation, SignVector


def identity(n):
    return tuple(range(n))


def compose_maps(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def inverse_map(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def test_relations_small_degrees(censuses, actions):
    """S^2 = 1, (ST)^3 = (TS)^3 = 1, mirror^2 = 1, mirror conjugates T and S
    to their inverses, for every degree up to 5."""
    for d, a in actions.items():
        n = a.size
        t, s, m = a.phi_T, a.phi_S, a.mirror
        assert compose_maps(s, s) == identity(n)
        assert compose_maps(m, m) == identity(n)
        st = compose_maps(s, t)
        ts = compose_maps(t, s)
        assert compose_maps(st, compose_maps(st, st)) == identity(n)
        assert compose_maps(ts, compose_maps(ts, ts)) == identity(n)
        assert compose_maps(m, compose_maps(t, m)) == inverse_map(t)
        assert compose_maps(m, compose_maps(s, m)) == inverse_map(s)


def test_relations_degree6(census6, action6):
    a = action6
    n = a.size
    st = compose_maps(a.phi_S, a.phi_T)
    assert compose_maps(a.phi_S, a.phi_S) == identity(n)
    assert compose_maps(st, compose_maps(st, st)) == identity(n)


def test_abelian_preserved(censuses, actions):
    for d, c in censuses.items():
        a = actions[d]
        for cl in c.classes:
            for img in (a.phi_T[cl.class_id], a.phi_S[cl.class_id], a.mirror[cl.class_id]):
                assert c.classes[img].abelian == cl.abelian


def test_transforms_well_defined_on_members():
    """Every member of a class maps into one target class, for each of the
    three transforms, exhaustively at d <= 3."""
    for d in (2, 3):
        c = census(d)
        a = build_action(c)
        for cl in c.classes:
            for y_imgs, eps_signs in cl.members:
                o = Origami(cl.x, Permutation(y_imgs), SignVector(eps_signs))
                assert find_class(c, transform_T(o)) == a.phi_T[cl.class_id]
                assert find_class(c, transform_S(o)) == a.phi_S[cl.class_id]
                assert find_class(c, transform_mirror(o)) == a.mirror[cl.class_id]


def test_torus_fixed_by_everything(censuses):
    c = censuses[1]
    assert act_T(c, 0) == act_S(c, 0) == act_mirror(c, 0) == 0


def test_pillowcase_fixed(censuses):
    c = censuses[2]
    o = Origami.parse("x=(1,2); y=(1,2); eps=+-")
    cid = find_class(c, o)
    assert act_T(c, cid) == cid
    assert act_S(c, cid) == cid
    assert act_mirror(c, cid) == cid


def test_transform_preserves_connectivity_and_degree(censuses):
    for d, c in censuses.items():
        for cl in c.classes[:: max(1, len(c.classes) // 10)]:
            rep = cl.canonical_rep
            for tr in (transform_T, transform_S, transform_mirror):
                out = tr(rep)
                assert out.degree == d
                assert is_abelian(out) == cl.abelian
