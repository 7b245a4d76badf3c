import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import built, su2_center
from gtqd.fusion import Representations
from gtqd.groups import subgroup_from, trivial_subgroup, whole_group
from gtqd.mckay import (ADELabel, UnrecognizedDiagram, build_graph, classical_mckay, classify_ADE, components,
                        expected_correspondent, verify_theorem)
from gtqd.qdouble import GTQD


def graph(n, edges):
    A = np.zeros((n, n), dtype=int)
    for i, j, *m in edges:
        A[i, j] += m[0] if m else 1
        if i != j:
            A[j, i] += m[0] if m else 1
    return A


def path(n):
    return [(i, i + 1) for i in range(n - 1)]


def star(arms):
    """Tree with a center and arms of the given numbers of nodes."""
    edges, k = [], 1
    for a in arms:
        prev = 0
        for _ in range(a):
            edges.append((prev, k))
            prev, k = k, k + 1
    return graph(k, edges)


def test_classify_synthetic():
    assert classify_ADE(graph(2, [(0, 1, 2)])) == ADELabel("A~", 1)
    for n in (3, 4, 7):
        assert classify_ADE(graph(n, path(n) + [(n - 1, 0)])) == ADELabel("A~", n - 1)
    assert classify_ADE(star([1, 1, 1, 1])) == ADELabel("D~", 4)
    # D~_n: a path of n - 3 nodes with two leaves at each end
    for n in (5, 6, 9):
        m = n - 3
        A = graph(n + 1, path(m) + [(0, m), (0, m + 1), (m - 1, m + 2), (m - 1, m + 3)])
        assert classify_ADE(A) == ADELabel("D~", n)
    assert classify_ADE(star([2, 2, 2])) == ADELabel("E~", 6)
    assert classify_ADE(star([1, 3, 3])) == ADELabel("E~", 7)
    assert classify_ADE(star([1, 2, 5])) == ADELabel("E~", 8)


@pytest.mark.parametrize("A, why", [
    (graph(2, [(0, 0), (0, 1)]), "self-loop"),
    (graph(3, [(0, 1)]), "not connected"),
    (graph(3, [(0, 1, 2), (1, 2)]), "multiple edge"),
    (graph(4, path(4)), "path"),
    (star([1, 2, 2]), "arms"),
    (star([1, 1, 1, 1, 1]), "degree"),
    (graph(4, path(4) + [(0, 2)]), "neither"),
])
def test_classify_rejects(A, why):
    with pytest.raises(UnrecognizedDiagram) as err:
        classify_ADE(A)
    assert why in str(err.value)
    assert len(err.value.degrees) == len(A)


def test_label():
    assert str(ADELabel("E~", 7)) == "E~_7" and ADELabel("D~", 5).nodes == 6
    with pytest.raises(ValueError):
        ADELabel("B~", 3)


def test_components():
    A = graph(5, [(0, 3), (1, 4)])
    assert components(A) == [(0, 3), (1, 4), (2,)]


@pytest.mark.parametrize("m", range(2, 25))
def test_classical_cyclic(m):
    g = classical_mckay(built(f"cyclic:{m}").group)
    assert g.component_type == [ADELabel("A~", m - 1)]


@pytest.mark.parametrize("n", range(2, 13))
def test_classical_binary_dihedral(n):
    g = classical_mckay(built(f"bd:{n}").group)
    assert g.component_type == [ADELabel("D~", n + 2)]


@pytest.mark.parametrize("spec, index", [("bt", 6), ("bo", 7), ("bi", 8)])
def test_classical_exceptional(spec, index):
    g = classical_mckay(built(spec).group)
    assert g.component_type == [ADELabel("E~", index)]
    # the trivial representation sits at an extremal node
    assert int(g.adjacency[0].sum()) == 1


def test_expected_correspondent():
    G = built("bo").group
    assert expected_correspondent(G) == ADELabel("E~", 7)
    assert expected_correspondent(built("bd:4").group) == ADELabel("D~", 6)
    assert expected_correspondent(su2_center(built("bo"))) == ADELabel("A~", 1)
    assert expected_correspondent(trivial_subgroup(G)) == ADELabel("A~", 0)


def _double(spec, normal):
    B = built(spec)
    N = {"center": su2_center, "one": lambda b: trivial_subgroup(b.group), "all": lambda b: whole_group(b.group)}[normal](B)
    return B, GTQD(B.group, N)


def test_binary_octahedral_mod_center():
    B, D = _double("bo", "center")
    rep = verify_theorem(D, B.W.values)
    assert rep.passed and rep.asserted
    g = rep.graph
    got = sorted((len(c), str(t)) for c, t in zip(g.components, g.component_type))
    assert got == sorted([(8, "E~_7"), (7, "D~_6"), (6, "A~_5"), (8, "A~_7"), (5, "D~_4")])


def test_drinfeld_double_components_are_class_centralizers():
    B, D = _double("bd:3", "one")
    rep = verify_theorem(D, B.W.values)
    assert rep.passed
    assert len(rep.graph.components) == len(B.group.classes)


def test_whole_group_gives_a_single_classical_graph():
    B, D = _double("bt", "all")
    g = build_graph(D, B.W.values)
    assert g.component_type == [ADELabel("E~", 6)]
    assert np.array_equal(g.adjacency, classical_mckay(B.group).adjacency)


def test_large_normal_subgroup_is_explored_not_asserted():
    B = built("bd:4")
    G = B.group
    N = subgroup_from(G, [G.labels.index("x2")])
    rep = verify_theorem(GTQD(G, N), B.W.values)
    assert not rep.asserted and N.order > 2


def test_json_and_dot_shape():
    B, D = _double("bd:3", "center")
    g = build_graph(D, B.W.values, Representations(D))
    js = json.loads(json.dumps(g.to_json()))
    assert js["schema"] == "gtqd/1" and js["kind"] == "mckay"
    assert len(js["nodes"]) == len(g.nodes)
    assert {c["type"] for c in js["components"]} == {"D~_5", "A~_5", "A~_3"}
    for i, j, m in js["edges"]:
        assert i <= j and m == g.adjacency[i, j] > 0
    dot = g.to_dot()
    assert dot.startswith("graph mckay {") and dot.count("subgraph cluster_") == len(g.components)
    assert "type=A~_5" in dot and "(dim 2)" in dot and "weight=1" in dot
    assert dot == build_graph(D, B.W.values).to_dot()


@given(st.integers(2, 9))
def test_cycles_classify_by_length(n):
    perm = np.random.default_rng(n).permutation(n)
    A = graph(n, [(int(perm[i]), int(perm[(i + 1) % n])) for i in range(n)]) if n > 2 else graph(2, [(0, 1, 2)])
    assert classify_ADE(A) == ADELabel("A~", n - 1)
