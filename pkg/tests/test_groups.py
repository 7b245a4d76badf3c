import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics.named_groups import AlternatingGroup, CyclicGroup, DihedralGroup, SymmetricGroup

from conftest import built, su2_center
from gtqd.groups import (GroupError, NotClosedError, center, centralizer, conj_action, cyclic_group, generate,
                         is_normal, quotient, subgroup_from, trivial_subgroup, whole_group)
from gtqd.polyhedral import _generators, parse_group_spec

SPECS = ["cyclic:6", "cyclic:7", "bd:2", "bd:3", "bd:4", "bd:5", "bt", "bo", "bi"]


def _sympy_class_count(G):
    return len(G.conjugacy_classes())


@pytest.mark.parametrize("spec", SPECS)
def test_group_axioms(spec):
    G = built(spec).group
    n = G.order
    assert G.check_associative() is None
    assert np.array_equal(G.mul[0], np.arange(n)) and np.array_equal(G.mul[:, 0], np.arange(n))
    assert all(G.mul[g, G.inv[g]] == 0 for g in range(n))
    for row in G.mul:
        assert sorted(row) == list(range(n))


@pytest.mark.parametrize("spec", SPECS)
def test_class_equation_and_conjugators(spec):
    G = built(spec).group
    assert sum(c.size for c in G.classes) == G.order
    whole = quotient(G, trivial_subgroup(G))
    for c in G.classes:
        for h, y in zip(c.members, c.conjugators):
            assert G.conj(y, c.representative) == h
        assert G.order % c.size == 0
        assert centralizer(G, whole, c.representative).order * c.size == G.order


@pytest.mark.parametrize("spec, oracle", [
    ("bd:3", DihedralGroup(3)), ("bd:4", DihedralGroup(4)), ("bd:5", DihedralGroup(5)),
    ("bt", AlternatingGroup(4)), ("bo", SymmetricGroup(4)), ("bi", AlternatingGroup(5)),
    ("cyclic:6", CyclicGroup(3)),
])
def test_quotient_by_su2_center_matches_sympy_class_count(spec, oracle):
    B = built(spec)
    q = quotient(B.group, su2_center(B))
    assert q.target.order == oracle.order()
    assert len(q.target.classes) == _sympy_class_count(oracle)
    assert q.target.check_associative() is None


def test_projection_is_a_homomorphism():
    B = built("bo")
    G = B.group
    q = quotient(G, su2_center(B))
    p = q.projection
    assert np.array_equal(p[G.mul], q.target.mul[p[:, None], p[None, :]])
    for gb in range(q.target.order):
        assert len(q.fiber(gb)) == 2


def test_centers():
    assert center(built("bt").group).order == 2
    assert center(built("cyclic:6").group).order == 6
    assert center(built("bd:4").group).order == 2


def test_non_normal_subgroup_rejected():
    G = built("bd:3").group
    y = G.labels.index("y")
    H = subgroup_from(G, [y])
    assert not is_normal(G, H)
    with pytest.raises(GroupError):
        quotient(G, H)


def test_generation_cap():
    with pytest.raises(NotClosedError):
        generate(_generators(parse_group_spec("bi")), cap=50)


def test_right_action_on_quotient():
    B = built("bd:3")
    G = B.group
    q = quotient(G, su2_center(B))
    Gb = q.target
    for gb in range(Gb.order):
        for x in range(G.order):
            h = conj_action(G, q, gb, x)
            assert Gb.mul[q(x), h] == Gb.mul[gb, q(x)]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 40), st.data())
def test_cyclic_group_subgroups_are_normal(n, data):
    G = cyclic_group(n)
    g = data.draw(st.integers(0, n - 1))
    N = subgroup_from(G, [g])
    assert is_normal(G, N)
    assert quotient(G, N).target.is_cyclic()
    assert N.order * quotient(G, N).target.order == n


def test_subgroup_as_group_keeps_matrices():
    B = built("bo")
    G = B.group
    q = quotient(G, su2_center(B))
    H = centralizer(G, q, q.target.classes[2].representative).as_group
    assert H.matrix_rep is not None and H.check_associative() is None
    assert whole_group(G).order == 48
