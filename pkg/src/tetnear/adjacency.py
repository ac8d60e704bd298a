"""Node-to-element incidence and near-element queries.

The incidence map holds, for every node, the ascending list of elements that
reference it, stored in CSR form (``offsets`` + flat ``elem_ids``). The
elements near ``e`` are then the union of the lists of ``e``'s four nodes,
minus ``e`` itself. Building the map and answering a query are both linear in
the number of incidence entries touched.

Three build strategies are available and produce identical arrays:

``serial``
    Two-pass counting sort on one thread.
``locked``
    Elements are split across threads that append to per-node lists, each
    append guarded by a striped lock; lists are sorted afterwards.
``countsort``
    Elements are split into contiguous ranges, each thread counts its own
    histogram, a prefix sum over (node, thread) hands every thread private
    write cursors, and the scatter runs lock-free. Bins come out sorted.
"""

import enum
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._errors import (
    CapacityOverflow,
    ElemOutOfRange,
    IncidenceMeshMismatch,
    NodeOutOfRange,
)
from .mesh import Nearness, distinct_nodes

__all__ = [
    "BuildStrategy",
    "IncidenceMap",
    "NeighborReport",
    "NeighborTable",
    "build_incidence",
    "elements_of_node",
    "near_elements",
    "near_elements_classified",
    "all_near",
    "neighbor_table",
    "nearness_tally",
]

DEFAULT_INDEX_DTYPE = np.dtype(np.uint32)
DEFAULT_STRIPES = 1024
_ALLOWED_DTYPES = {np.dtype(t) for t in
                   (np.uint8, np.uint16, np.uint32, np.int32, np.int64)}


class BuildStrategy(str, enum.Enum):
    SERIAL = "serial"
    LOCKED = "locked"
    COUNTSORT = "countsort"


@dataclass(frozen=True, eq=False)
class IncidenceMap:
    """CSR node-to-element lists.

    ``elem_ids[offsets[j]:offsets[j + 1]]`` are the elements of node ``j``,
    ascending and duplicate-free.
    """

    offsets: np.ndarray
    elem_ids: np.ndarray
    n_node: int
    n_elem: int

    def __post_init__(self):
        self.offsets.setflags(write=False)
        self.elem_ids.setflags(write=False)

    @property
    def n_entries(self):
        return int(self.offsets[-1])

    def valence(self):
        return np.diff(self.offsets.astype(np.int64))

    def to_lists(self):
        o = self.offsets.astype(np.int64)
        return [self.elem_ids[o[j]:o[j + 1]].tolist() for j in range(self.n_node)]

    def __eq__(self, other):
        if not isinstance(other, IncidenceMap):
            return NotImplemented
        return (
            self.n_node == other.n_node
            and self.n_elem == other.n_elem
            and self.offsets.dtype == other.offsets.dtype
            and self.elem_ids.dtype == other.elem_ids.dtype
            and self.offsets.tobytes() == other.offsets.tobytes()
            and self.elem_ids.tobytes() == other.elem_ids.tobytes()
        )

    __hash__ = None

    def __repr__(self):
        return (f"IncidenceMap(n_node={self.n_node}, n_elem={self.n_elem}, "
                f"n_entries={self.n_entries})")


@dataclass(frozen=True)
class NeighborReport:
    """Near elements of ``elem`` as ascending ``(elem_id, Nearness)`` pairs."""

    elem: int
    neighbors: tuple = ()


@dataclass(frozen=True, eq=False)
class NeighborTable:
    """Near elements of a contiguous range of elements, in CSR form.

    Row ``i`` describes element ``start + i``: ids are
    ``ids[offsets[i]:offsets[i + 1]]`` and ``shared`` holds the matching
    shared-vertex counts.
    """

    start: int
    offsets: np.ndarray
    ids: np.ndarray
    shared: np.ndarray

    def __len__(self):
        return len(self.offsets) - 1

    def report(self, i):
        a, b = self.offsets[i], self.offsets[i + 1]
        return NeighborReport(
            self.start + i,
            tuple(
                (f, Nearness(c))
                for f, c in zip(self.ids[a:b].tolist(), self.shared[a:b].tolist())
            ),
        )

    def __iter__(self):
        for i in range(len(self)):
            yield self.report(i)


def resolve_index_dtype(index_dtype):
    dt = np.dtype(index_dtype)
    if dt not in _ALLOWED_DTYPES:
        raise ValueError(f"unsupported index dtype {dt}; use one of "
                         f"{sorted(str(d) for d in _ALLOWED_DTYPES)}")
    return dt


def check_capacity(n_elem, index_dtype):
    dt = resolve_index_dtype(index_dtype)
    limit = int(np.iinfo(dt).max)
    if 4 * n_elem > limit:
        raise CapacityOverflow(4 * n_elem, dt, limit)
    return dt


def _partition(n, parts):
    bounds = np.linspace(0, n, parts + 1).astype(np.int64)
    return list(zip(bounds[:-1].tolist(), bounds[1:].tolist()))


def _build_serial(elements, n_node, dt):
    counts = np.zeros(n_node, np.int64)
    _kernels.count_nodes(elements, 0, len(elements), counts)
    offsets = np.zeros(n_node + 1, np.int64)
    np.cumsum(counts, out=offsets[1:])
    elem_ids = np.empty(int(offsets[-1]), dt)
    cursor = offsets[:-1].copy()
    _kernels.scatter_elements(elements, 0, len(elements), cursor, elem_ids)
    return offsets, elem_ids


def _build_countsort(elements, n_node, dt, threads):
    ranges = _partition(len(elements), threads)
    counts = np.zeros((threads, n_node), np.int64)
    with ThreadPoolExecutor(threads) as pool:
        list(pool.map(
            lambda t: _kernels.count_nodes(elements, *ranges[t], counts[t]),
            range(threads),
        ))
        totals = counts.sum(axis=0)
        offsets = np.zeros(n_node + 1, np.int64)
        np.cumsum(totals, out=offsets[1:])
        # thread t writes node j's entries after those of threads < t
        cursors = offsets[:-1] + np.cumsum(counts, axis=0) - counts
        elem_ids = np.empty(int(offsets[-1]), dt)
        list(pool.map(
            lambda t: _kernels.scatter_elements(elements, *ranges[t],
                                                cursors[t], elem_ids),
            range(threads),
        ))
    return offsets, elem_ids


def _build_locked(elements, n_node, dt, threads, n_stripes):
    lists = [[] for _ in range(n_node)]
    locks = [threading.Lock() for _ in range(max(1, n_stripes))]
    n_locks = len(locks)

    def work(lo, hi):
        for e in range(lo, hi):
            for j in distinct_nodes(elements[e]):
                with locks[j % n_locks]:
                    lists[j].append(e)

    with ThreadPoolExecutor(threads) as pool:
        for fut in [pool.submit(work, lo, hi)
                    for lo, hi in _partition(len(elements), threads)]:
            fut.result()

    counts = np.fromiter((len(l) for l in lists), np.int64, n_node)
    offsets = np.zeros(n_node + 1, np.int64)
    np.cumsum(counts, out=offsets[1:])
    elem_ids = np.empty(int(offsets[-1]), dt)
    for j, l in enumerate(lists):
        l.sort()
        elem_ids[offsets[j]:offsets[j + 1]] = l
    return offsets, elem_ids


def build_incidence(mesh, strategy=BuildStrategy.COUNTSORT, thread_count=None,
                    *, n_stripes=DEFAULT_STRIPES,
                    index_dtype=DEFAULT_INDEX_DTYPE):
    """Build the node-to-element :class:`IncidenceMap` of ``mesh``.

    Parameters
    ----------
    mesh : Mesh
        A validated mesh.
    strategy : BuildStrategy or str, default="countsort"
    thread_count : int, optional
        Worker threads for the parallel strategies; defaults to the CPU
        count. Ignored by ``serial``.
    n_stripes : int, default=1024
        Number of locks shared by the node lists under ``locked``.
    index_dtype : dtype, default=uint32
        Integer width of ``offsets`` and ``elem_ids``.

    Raises
    ------
    CapacityOverflow
        If ``4 * n_elem`` does not fit in ``index_dtype``.
    """
    strategy = BuildStrategy(strategy)
    if thread_count is None:
        thread_count = os.cpu_count() or 1
    if thread_count < 1:
        raise ValueError(f"thread_count must be >= 1, got {thread_count}")
    dt = check_capacity(mesh.n_elem, index_dtype)
    elements = mesh.elements
    n_node = mesh.n_node

    if strategy is BuildStrategy.SERIAL or (
        strategy is BuildStrategy.COUNTSORT and thread_count == 1
    ):
        offsets, elem_ids = _build_serial(elements, n_node, dt)
    elif strategy is BuildStrategy.COUNTSORT:
        offsets, elem_ids = _build_countsort(elements, n_node, dt, thread_count)
    else:
        offsets, elem_ids = _build_locked(elements, n_node, dt, thread_count,
                                          n_stripes)
    return IncidenceMap(offsets.astype(dt), elem_ids, n_node, mesh.n_elem)


def elements_of_node(inc, j):
    """Ascending element ids incident to node ``j``."""
    if not 0 <= j < inc.n_node:
        raise NodeOutOfRange(j, inc.n_node)
    return inc.elem_ids[int(inc.offsets[j]):int(inc.offsets[j + 1])].tolist()


def _check_pair(inc, mesh):
    if inc.n_node != mesh.n_node or inc.n_elem != mesh.n_elem:
        raise IncidenceMeshMismatch((inc.n_node, inc.n_elem),
                                    (mesh.n_node, mesh.n_elem))


def query_table(inc, queries, start=0, stop=None, exclude_self=True):
    """Near elements of ``queries[start:stop]`` as a :class:`NeighborTable`.

    ``queries`` is an ``(n, 4)`` int64 node-index array whose indices are
    valid for ``inc``. With ``exclude_self`` the query row number is dropped
    from its own result, which is right when ``queries`` is the mesh itself.
    """
    stop = len(queries) if stop is None else stop
    n = stop - start
    counts = np.empty(n, np.int64)
    _kernels.near_counts(queries, inc.offsets, inc.elem_ids, start, stop,
                         exclude_self, counts)
    offsets = np.zeros(n + 1, np.int64)
    np.cumsum(counts, out=offsets[1:])
    ids = np.empty(int(offsets[-1]), np.int64)
    shared = np.empty(int(offsets[-1]), np.int8)
    _kernels.near_fill(queries, inc.offsets, inc.elem_ids, start, stop,
                       exclude_self, offsets, ids, shared)
    return NeighborTable(start, offsets, ids, shared)


def nearness_tally(inc, mesh):
    """Count near element pairs of ``mesh`` by :class:`Nearness`.

    Every unordered pair is counted once. This runs the full query sweep
    without keeping its results.
    """
    _check_pair(inc, mesh)
    tally = np.zeros(5, np.int64)
    _kernels.near_tally(mesh.elements, inc.offsets, inc.elem_ids, 0,
                        mesh.n_elem, True, tally)
    return {Nearness(c): int(tally[c]) // 2 for c in range(1, 5)}


def neighbor_table(inc, mesh, start=0, stop=None):
    """Near elements of elements ``start..stop-1`` of ``mesh``."""
    _check_pair(inc, mesh)
    stop = mesh.n_elem if stop is None else min(stop, mesh.n_elem)
    return query_table(inc, mesh.elements, start, max(start, stop))


def _single(inc, mesh, e):
    _check_pair(inc, mesh)
    if isinstance(e, bool) or not 0 <= e < mesh.n_elem:
        raise ElemOutOfRange(e, mesh.n_elem)
    return query_table(inc, mesh.elements, int(e), int(e) + 1)


def near_elements(inc, mesh, e):
    """Ascending ids of the elements sharing at least one node with ``e``."""
    return _single(inc, mesh, e).ids.tolist()


def near_elements_classified(inc, mesh, e):
    """Like :func:`near_elements`, each id paired with its :class:`Nearness`."""
    return _single(inc, mesh, e).report(0)


def all_near(inc, mesh, chunk_size=65536):
    """Yield a :class:`NeighborReport` for every element, in id order.

    Work proceeds in chunks of ``chunk_size`` elements so memory stays
    bounded on large meshes.
    """
    _check_pair(inc, mesh)
    return (
        report
        for start in range(0, mesh.n_elem, chunk_size)
        for report in neighbor_table(inc, mesh, start, start + chunk_size)
    )
