import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetnear import (
    DegenerateElement,
    IndexOutOfRange,
    InvalidCount,
    Mesh,
    Nearness,
    NonFiniteCoordinate,
    classify_nearness,
    shared_vertex_count,
    validate_mesh,
)

tets = st.lists(st.integers(0, 9), min_size=4, max_size=4, unique=True).map(tuple)


def test_validate_two_tet():
    mesh = validate_mesh(np.zeros((5, 3)), [(0, 1, 2, 3), (1, 2, 3, 4)])
    assert mesh.n_elem == 2
    assert mesh.n_node == 5
    assert mesh.element(1) == (1, 2, 3, 4)


def test_validate_preserves_order():
    nodes = np.random.default_rng(0).random((6, 3))
    elems = [(5, 4, 3, 2), (0, 2, 1, 5)]
    mesh = validate_mesh(nodes, elems)
    assert np.array_equal(mesh.nodes, nodes)
    assert mesh.elements.tolist() == [list(e) for e in elems]


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange) as exc:
        validate_mesh(np.zeros((4, 3)), [(0, 1, 2, 9)])
    assert (exc.value.elem, exc.value.slot, exc.value.index) == (0, 3, 9)


def test_negative_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        validate_mesh(np.zeros((4, 3)), [(0, 1, -1, 2)])


def test_degenerate_element():
    with pytest.raises(DegenerateElement) as exc:
        validate_mesh(np.zeros((4, 3)), [(0, 1, 1, 2)])
    assert exc.value.elem == 0


def test_degenerate_permissive_warns():
    with pytest.warns(UserWarning, match="degenerate"):
        mesh = validate_mesh(np.zeros((4, 3)), [(0, 1, 1, 2)], permissive=True)
    assert mesh.element(0) == (0, 1, 1, 2)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite(bad):
    nodes = np.zeros((4, 3))
    nodes[2, 1] = bad
    with pytest.raises(NonFiniteCoordinate) as exc:
        validate_mesh(nodes, [(0, 1, 2, 3)])
    assert exc.value.node == 2


def test_empty_mesh():
    mesh = validate_mesh([], [])
    assert (mesh.n_node, mesh.n_elem) == (0, 0)


def test_mesh_is_immutable(two_tet):
    with pytest.raises(ValueError):
        two_tet.elements[0, 0] = 4


def test_mesh_equality(two_tet):
    assert two_tet == Mesh(two_tet.nodes.copy(), two_tet.elements.copy())


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((0, 1, 2, 3), (1, 2, 3, 4), 3),
        ((0, 1, 2, 3), (0, 1, 2, 3), 4),
        ((0, 1, 2, 3), (4, 5, 6, 7), 0),
    ],
)
def test_shared_vertex_count(a, b, expected):
    assert shared_vertex_count(a, b) == expected


@pytest.mark.parametrize(
    "shared, expected",
    [
        (0, Nearness.NOT_NEAR),
        (1, Nearness.VERTEX_NEAR),
        (2, Nearness.EDGE_NEAR),
        (3, Nearness.FACE_NEAR),
        (4, Nearness.COINCIDENT),
    ],
)
def test_classify(shared, expected):
    assert classify_nearness(shared) is expected


@pytest.mark.parametrize("bad", [-1, 5, 2.0, "3", None, True])
def test_classify_invalid(bad):
    with pytest.raises(InvalidCount):
        classify_nearness(bad)


def test_codes_roundtrip():
    for n in Nearness:
        assert Nearness.from_code(n.code) is n
    assert [n.code for n in Nearness] == ["N", "V", "E", "F", "C"]


@given(tets, tets)
def test_shared_count_symmetric(a, b):
    assert shared_vertex_count(a, b) == shared_vertex_count(b, a)


@given(tets)
def test_shared_count_self(a):
    assert shared_vertex_count(a, a) == 4


def _faces(t):
    return {frozenset(c) for c in itertools.combinations(t, 3)}


def _edges(t):
    return {frozenset(c) for c in itertools.combinations(t, 2)}


@given(tets, tets)
def test_classification_matches_simplex_enumeration(a, b):
    # independent check: enumerate the faces and edges of both tetrahedra
    kind = classify_nearness(shared_vertex_count(a, b))
    common_faces = _faces(a) & _faces(b)
    common_edges = _edges(a) & _edges(b)
    common_vertices = set(a) & set(b)
    assert (kind is Nearness.FACE_NEAR) == (len(common_faces) == 1)
    assert (kind is Nearness.EDGE_NEAR) == (len(common_edges) == 1 and not common_faces)
    assert (kind is Nearness.VERTEX_NEAR) == (len(common_vertices) == 1)
    assert (kind is Nearness.COINCIDENT) == (len(common_faces) == 4)
    assert (kind is Nearness.NOT_NEAR) == (not common_vertices)
