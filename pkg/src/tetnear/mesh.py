"""Tetrahedral mesh data model and shared-vertex nearness.

A mesh is a cloud of nodes (``(n_node, 3)`` float coordinates) plus a list of
elements, each given by four zero-based node indices. Two elements are near
when they share at least one node; how many they share decides the kind.
"""

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from ._errors import (
    DegenerateElement,
    IndexOutOfRange,
    InvalidCount,
    NonFiniteCoordinate,
)

__all__ = [
    "Mesh",
    "Nearness",
    "validate_mesh",
    "shared_vertex_count",
    "classify_nearness",
    "distinct_nodes",
]

NodeId = int
ElemId = int
Element = tuple  # (j0, j1, j2, j3)


class Nearness(enum.IntEnum):
    """Kind of nearness between two elements, valued by shared-vertex count."""

    NOT_NEAR = 0
    VERTEX_NEAR = 1
    EDGE_NEAR = 2
    FACE_NEAR = 3
    COINCIDENT = 4

    @property
    def code(self):
        return _CODES[self]

    @classmethod
    def from_code(cls, code):
        try:
            return _FROM_CODE[code]
        except KeyError:
            raise ValueError(f"unknown nearness code {code!r}") from None


_CODES = {
    Nearness.NOT_NEAR: "N",
    Nearness.VERTEX_NEAR: "V",
    Nearness.EDGE_NEAR: "E",
    Nearness.FACE_NEAR: "F",
    Nearness.COINCIDENT: "C",
}
_FROM_CODE = {v: k for k, v in _CODES.items()}


def _readonly(a):
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Mesh:
    """Node coordinates plus tetrahedral connectivity.

    Parameters
    ----------
    nodes : ndarray of shape (n_node, 3), float64
    elements : ndarray of shape (n_elem, 4), int64
        Zero-based node indices. Use :func:`validate_mesh` to build a mesh
        from untrusted input; the constructor only normalizes dtypes.
    """

    nodes: np.ndarray
    elements: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=np.float64).reshape(-1, 3)
        elements = np.array(self.elements, dtype=np.int64).reshape(-1, 4)
        object.__setattr__(self, "nodes", _readonly(nodes))
        object.__setattr__(self, "elements", _readonly(elements))

    @property
    def n_node(self):
        return self.nodes.shape[0]

    @property
    def n_elem(self):
        return self.elements.shape[0]

    def element(self, e):
        return tuple(int(j) for j in self.elements[e])

    def __eq__(self, other):
        if not isinstance(other, Mesh):
            return NotImplemented
        return np.array_equal(self.nodes, other.nodes) and np.array_equal(
            self.elements, other.elements
        )

    __hash__ = None

    def __repr__(self):
        return f"Mesh(n_node={self.n_node}, n_elem={self.n_elem})"


def validate_mesh(raw_nodes, raw_elements, permissive=False):
    """Check raw node and element data and return a :class:`Mesh`.

    Node and element order is preserved. Errors name the first offending
    entity in row-major order.

    Parameters
    ----------
    raw_nodes : array-like of shape (n_node, 3)
    raw_elements : array-like of shape (n_elem, 4)
        Integer node indices.
    permissive : bool, default=False
        If True, elements that repeat a node index are kept (with a
        warning) instead of raising :class:`DegenerateElement`.

    Raises
    ------
    NonFiniteCoordinate, IndexOutOfRange, DegenerateElement
    """
    nodes = np.asarray(raw_nodes, dtype=np.float64)
    if nodes.size == 0:
        nodes = nodes.reshape(0, 3)
    if nodes.ndim != 2 or nodes.shape[1] != 3:
        raise ValueError(f"nodes must have shape (n_node, 3), got {nodes.shape}")
    elements = np.asarray(raw_elements)
    if elements.size == 0:
        elements = elements.reshape(0, 4)
    if elements.ndim != 2 or elements.shape[1] != 4:
        raise ValueError(
            f"elements must have shape (n_elem, 4), got {elements.shape}"
        )
    if elements.dtype.kind not in "iu":
        as_int = elements.astype(np.int64)
        if not np.array_equal(as_int, elements):
            raise ValueError("element node indices must be integers")
        elements = as_int
    elements = elements.astype(np.int64, copy=False)

    bad = ~np.isfinite(nodes).all(axis=1)
    if bad.any():
        raise NonFiniteCoordinate(int(np.flatnonzero(bad)[0]))

    n_node = nodes.shape[0]
    out = (elements < 0) | (elements >= n_node)
    if out.any():
        e, slot = np.argwhere(out)[0]
        raise IndexOutOfRange(int(e), int(slot), int(elements[e, slot]), n_node)

    s = np.sort(elements, axis=1)
    repeated = (s[:, 1:] == s[:, :-1]).any(axis=1)
    if repeated.any():
        first = int(np.flatnonzero(repeated)[0])
        if not permissive:
            raise DegenerateElement(first, elements[first].tolist())
        warnings.warn(
            f"{int(repeated.sum())} degenerate element(s) kept in permissive "
            f"mode (first: {first})",
            stacklevel=2,
        )
    return Mesh(nodes, elements)


def distinct_nodes(element):
    """Distinct node ids of an element, in first-occurrence order."""
    return tuple(dict.fromkeys(int(j) for j in element))


def shared_vertex_count(a, b):
    """Number of node ids two elements have in common (0 to 4)."""
    return len(set(int(j) for j in a) & set(int(j) for j in b))


def classify_nearness(shared):
    """Map a shared-vertex count to a :class:`Nearness`.

    Any two vertices of a tetrahedron span one of its edges and any three span
    a face, so the count alone decides vertex-, edge- or face-nearness. Four
    shared vertices means the two elements are the same tetrahedron.
    """
    if isinstance(shared, bool) or not isinstance(shared, (int, np.integer)):
        raise InvalidCount(shared)
    if not 0 <= shared <= 4:
        raise InvalidCount(shared)
    return Nearness(int(shared))
