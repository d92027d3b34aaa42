from __future__ import annotations

import pytest

from embedkit import (
    BudgetExhausted,
    Family,
    FamilySpec,
    NonexistenceError,
    PredictedParams,
    ValidationError,
    expected_faces_k4r1,
    is_self_dual,
    predicted_params,
    scheme_k4r1,
    scheme_k4s,
    trace_faces,
)
from embedkit.scheme_gen import (
    Z2PowerTimesCyclic,
    build_k4s,
    complete_graph_genus,
    face_oracle,
)
from embedkit.surface_map import cyclic_equal
from embedkit.textio import read_rotation


def test_k9_rows_match_reference(data_dir):
    reference = read_rotation(data_dir / "k9_rotation.rot")
    assert scheme_k4r1(2).same_cyclic_orders(reference)
    assert scheme_k4r1(2).rotations[0] == (1, 7, 8, 2, 3, 5, 6, 4)


def test_k5_reference_is_mirror_of_scheme(data_dir):
    reference = read_rotation(data_dir / "k5_example.rot")
    assert reference.same_cyclic_orders(scheme_k4r1(1).mirror())
    assert face_oracle(reference, trace_faces(reference)) is True


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_k4r1_rows_are_translates(r):
    rot = scheme_k4r1(r)
    n = 4 * r + 1
    for i in range(n):
        assert rot.rotations[i] == tuple((x + i) % n for x in rot.rotations[0])


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_k4r1_faces_and_genus(r):
    m = trace_faces(scheme_k4r1(r))
    n = 4 * r + 1
    assert m.face_lengths() == [n - 1] * n
    assert m.genus == r * (4 * r - 3) == complete_graph_genus(n)
    traced = [f.vertices for f in m.faces]
    for seq in expected_faces_k4r1(r):
        assert any(cyclic_equal(t, seq) for t in traced)
    assert is_self_dual(m)


def test_k13_genus():
    assert trace_faces(scheme_k4r1(3)).genus == 27


@pytest.mark.parametrize("r", [0, -1])
def test_k4r1_rejects_small_r(r):
    with pytest.raises(ValidationError):
        scheme_k4r1(r)


@pytest.mark.parametrize("n, genus", [(8, 7), (12, 22), (16, 45), (20, 76)])
def test_k4s_genus_and_self_duality(n, genus):
    built = build_k4s(n)
    m = built.surface
    assert m.genus == genus == complete_graph_genus(n)
    assert m.face_lengths() == [n - 1] * n
    assert is_self_dual(m)
    assert face_oracle(built.rotation, m) is True


def test_k4s_rows_are_group_translates():
    built = build_k4s(12)
    g = built.group
    rot = built.rotation
    for x in range(12):
        assert rot.rotations[x] == tuple(g.add(y, x) for y in rot.rotations[0])


@pytest.mark.parametrize("n", [4, 6, 10, 0])
def test_k4s_rejects_bad_orders(n):
    with pytest.raises(ValidationError):
        scheme_k4s(n)


def test_k4s_zero_budget():
    with pytest.raises(BudgetExhausted):
        scheme_k4s(8, budget=0)


@pytest.mark.parametrize("n", [8, 12, 16, 24, 32, 40])
def test_group_structure(n):
    group = Z2PowerTimesCyclic.for_order(n)
    assert group.order == n
    inv = group.involutions()
    assert len(inv) == 2**group.sigma - 1
    total = 0
    for x in inv:
        assert group.add(x, x) == 0
        total = group.add(total, x)
    assert total == 0
    a = group.paired_elements()
    covered = set(a) | {group.neg(x) for x in a}
    assert covered | set(inv) | {0} == set(range(n))
    assert len(a) % 2 == 0


def test_group_labels_round_trip():
    group = Z2PowerTimesCyclic(3, 5)
    for x in range(group.order):
        assert group.label(group.element(x)) == x


@pytest.mark.parametrize(
    "spec, expected",
    [
        ("class1:r=1", "[[10,2,3]]"),
        ("class1:r=2", "[[36,20,3]]"),
        ("class1:r=3", "[[78,54,3]]"),
        ("class2:s=2", "[[28,14,3]]"),
        ("class2:s=3", "[[66,44,3]]"),
        ("class3:r=4,s=4", "[[16,2,4]]"),
        ("class3:r=4,s=8", "[[32,6,4]]"),
        ("class4:r=2,s=2", "[[20,2,3]]"),
    ],
)
def test_predicted_params(spec, expected):
    assert str(predicted_params(FamilySpec.parse(spec))) == expected


def test_spec_round_trip():
    for text in ["class1:r=5", "class2:s=7", "class3:r=4,s=12", "class4:r=3,s=2"]:
        assert str(FamilySpec.parse(text)) == text
    assert FamilySpec.parse("class3:r=4,s=4").family is Family.CLASS_III


@pytest.mark.parametrize(
    "text",
    ["class1:r=0", "class2:s=1", "class3:r=4,s=6", "class3:r=0,s=4", "class4:r=1,s=2", "class5:r=1", "class1", "class1:s=1", "class1:r=x"],
)
def test_spec_rejects(text):
    with pytest.raises(ValidationError):
        FamilySpec.parse(text)


def test_k66_is_nonexistent():
    with pytest.raises(NonexistenceError):
        FamilySpec.parse("class3:r=6,s=6")


def test_predicted_params_validation():
    with pytest.raises(ValidationError):
        PredictedParams(4, 5, 2)
