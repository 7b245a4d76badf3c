import pytest

from conftest import built, su2_center
from gtqd.groups import GroupError, centralizer, quotient
from gtqd.polyhedral import GroupSpec, build, parse_group_spec, recognize

# orders and class counts of the finite subgroups of SU2
CASES = [("cyclic:6", 6, 6), ("cyclic:1", 1, 1), ("bd:2", 8, 5), ("bd:3", 12, 6), ("bd:4", 16, 7),
         ("bd:12", 48, 15), ("bt", 24, 7), ("bo", 48, 8), ("bi", 120, 9)]


@pytest.mark.parametrize("spec, order, classes", CASES)
def test_orders_and_class_counts(spec, order, classes):
    B = build(spec)
    assert B.group.order == order == B.spec.order
    assert len(B.group.classes) == classes


@pytest.mark.parametrize("spec", ["cyclic:8", "bd:3", "bt", "bo", "bi"])
def test_canonical_module_is_the_trace(spec):
    B = built(spec)
    for m, w in zip(B.group.matrix_rep, B.W.values):
        assert w == m[0] + m[3]
    assert B.W.values[0] == 2
    assert B.W.values[B.involution] == -2


@pytest.mark.parametrize("text", ["bd", "cyclic:x", "foo", "bt:2", "cyclic:0"])
def test_bad_specs(text):
    with pytest.raises(ValueError):
        parse_group_spec(text)


def test_spec_round_trip():
    for t in ["cyclic:5", "bd:7", "bt", "bo", "bi"]:
        assert str(parse_group_spec(t)) == t


@pytest.mark.parametrize("spec", ["cyclic:12", "bd:5", "bt", "bo", "bi"])
def test_recognize_whole_group(spec):
    B = built(spec)
    assert recognize(B.group) == B.spec


def test_octahedral_stabilizers():
    # stabilizers of the classes of the octahedral group S4 inside <2,3,4>
    B = built("bo")
    G = B.group
    q = quotient(G, su2_center(B))
    kinds = sorted(str(recognize(centralizer(G, q, c.representative))) for c in q.target.classes)
    assert kinds == sorted(["bo", "bd:2", "bd:4", "cyclic:8", "cyclic:6"])


def test_icosahedral_stabilizers():
    B = built("bi")
    G = B.group
    q = quotient(G, su2_center(B))
    kinds = sorted(str(recognize(centralizer(G, q, c.representative))) for c in q.target.classes)
    assert kinds == sorted(["bi", "bd:2", "cyclic:6", "cyclic:10", "cyclic:10"])


def test_recognize_rejects_non_su2_shapes():
    from gtqd.groups import FiniteGroup
    import numpy as np
    # Klein four-group is not a subgroup of SU2
    idx = np.arange(4)
    V4 = FiniteGroup(idx[:, None] ^ idx[None, :])
    with pytest.raises(GroupError):
        recognize(V4)


def test_odd_cyclic_has_no_involution():
    from gtqd.polyhedral import central_involution
    with pytest.raises(GroupError):
        central_involution(build("cyclic:5"))
    assert GroupSpec("cyclic", 5).order == 5
