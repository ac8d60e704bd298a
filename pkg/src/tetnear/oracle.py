"""Brute-force reference results for checking :mod:`tetnear.adjacency`.

Everything here is deliberately naive: near elements come from a pairwise scan
of all elements, and the incidence map from plain Python lists filled one
append at a time. Only the result containers are shared with the fast path.
"""

import numpy as np

from ._errors import ElemOutOfRange
from .adjacency import DEFAULT_INDEX_DTYPE, IncidenceMap, NeighborReport
from .mesh import classify_nearness, shared_vertex_count

__all__ = ["brute_force_near", "brute_force_near_classified", "naive_incidence"]


def _pairs(mesh, e):
    if isinstance(e, bool) or not 0 <= e < mesh.n_elem:
        raise ElemOutOfRange(e, mesh.n_elem)
    elements = mesh.elements.tolist()
    mine = elements[e]
    for f, other in enumerate(elements):
        if f == e:
            continue
        shared = shared_vertex_count(mine, other)
        if shared >= 1:
            yield f, shared


def brute_force_near(mesh, e):
    return [f for f, _ in _pairs(mesh, e)]


def brute_force_near_classified(mesh, e):
    return NeighborReport(
        int(e), tuple((f, classify_nearness(s)) for f, s in _pairs(mesh, e))
    )


def naive_incidence(mesh, index_dtype=DEFAULT_INDEX_DTYPE):
    """Incidence map from one growable list per node, then sorted and deduped."""
    lists = [[] for _ in range(mesh.n_node)]
    for i_elem, nodes in enumerate(mesh.elements.tolist()):
        for j in nodes:
            lists[j].append(i_elem)

    offsets = [0]
    flat = []
    for bucket in lists:
        canonical = sorted(set(bucket))
        flat.extend(canonical)
        offsets.append(offsets[-1] + len(canonical))
    return IncidenceMap(
        np.array(offsets, dtype=index_dtype),
        np.array(flat, dtype=index_dtype),
        mesh.n_node,
        mesh.n_elem,
    )
