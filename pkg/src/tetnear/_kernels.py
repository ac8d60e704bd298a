"""Compiled inner loops for incidence construction and neighbor queries.

All kernels release the GIL so element ranges can be processed from a thread
pool. Slots that repeat an earlier node of the same element are skipped, which
keeps per-node lists duplicate-free for degenerate (permissive) elements.
"""

import numpy as np
from numba import njit

_NO_ELEM = np.iinfo(np.int64).max


@njit(nogil=True, cache=True, inline="always")
def _is_repeat(elements, e, k):
    j = elements[e, k]
    for m in range(k):
        if elements[e, m] == j:
            return True
    return False


@njit(nogil=True, cache=True)
def count_nodes(elements, lo, hi, counts):
    """Add the node occurrences of elements [lo, hi) to ``counts``."""
    for e in range(lo, hi):
        for k in range(4):
            if not _is_repeat(elements, e, k):
                counts[elements[e, k]] += 1


@njit(nogil=True, cache=True)
def scatter_elements(elements, lo, hi, cursor, elem_ids):
    """Write element ids of [lo, hi) into their node bins.

    ``cursor[j]`` is the next free slot of node ``j`` owned by this caller and
    is advanced in place.
    """
    for e in range(lo, hi):
        for k in range(4):
            if not _is_repeat(elements, e, k):
                j = elements[e, k]
                elem_ids[cursor[j]] = e
                cursor[j] += 1


@njit(nogil=True, cache=True, inline="always")
def _head(elem_ids, h, end):
    if h < end:
        return np.int64(elem_ids[h])
    return _NO_ELEM


@njit(nogil=True, cache=True)
def _merge_one(queries, q, offsets, elem_ids, skip, out_ids, out_shared,
               pos, write, tally):
    # Merge the sorted bins of the query's distinct nodes. The number of bins
    # holding an element id equals the number of nodes it shares with the query.
    j0 = queries[q, 0]
    j1 = queries[q, 1]
    j2 = queries[q, 2]
    j3 = queries[q, 3]
    h0 = np.int64(offsets[j0])
    n0 = np.int64(offsets[j0 + 1])
    h1 = np.int64(offsets[j1])
    n1 = np.int64(offsets[j1 + 1])
    h2 = np.int64(offsets[j2])
    n2 = np.int64(offsets[j2 + 1])
    h3 = np.int64(offsets[j3])
    n3 = np.int64(offsets[j3 + 1])
    # a repeated node contributes its bin once
    if j1 == j0:
        n1 = h1
    if j2 == j0 or j2 == j1:
        n2 = h2
    if j3 == j0 or j3 == j1 or j3 == j2:
        n3 = h3
    v0 = _head(elem_ids, h0, n0)
    v1 = _head(elem_ids, h1, n1)
    v2 = _head(elem_ids, h2, n2)
    v3 = _head(elem_ids, h3, n3)
    n = 0
    while True:
        best = min(min(v0, v1), min(v2, v3))
        if best == _NO_ELEM:
            break
        c = 0
        if v0 == best:
            c += 1
            h0 += 1
            v0 = _head(elem_ids, h0, n0)
        if v1 == best:
            c += 1
            h1 += 1
            v1 = _head(elem_ids, h1, n1)
        if v2 == best:
            c += 1
            h2 += 1
            v2 = _head(elem_ids, h2, n2)
        if v3 == best:
            c += 1
            h3 += 1
            v3 = _head(elem_ids, h3, n3)
        if best != skip:
            tally[c] += 1
            if write:
                out_ids[pos + n] = best
                out_shared[pos + n] = c
            n += 1
    return n


@njit(nogil=True, cache=True)
def near_counts(queries, offsets, elem_ids, lo, hi, exclude_self, counts):
    """Number of near elements for each query in [lo, hi)."""
    dummy_ids = np.empty(0, np.int64)
    dummy_shared = np.empty(0, np.int8)
    tally = np.zeros(5, np.int64)
    for q in range(lo, hi):
        skip = q if exclude_self else -1
        counts[q - lo] = _merge_one(queries, q, offsets, elem_ids, skip,
                                    dummy_ids, dummy_shared, 0, False, tally)


@njit(nogil=True, cache=True)
def near_tally(queries, offsets, elem_ids, lo, hi, exclude_self, tally):
    """Count near (query, element) pairs by shared-vertex count into ``tally``.

    Runs the same merge as the other query kernels without storing results.
    """
    dummy_ids = np.empty(0, np.int64)
    dummy_shared = np.empty(0, np.int8)
    for q in range(lo, hi):
        skip = q if exclude_self else -1
        _merge_one(queries, q, offsets, elem_ids, skip,
                   dummy_ids, dummy_shared, 0, False, tally)


@njit(nogil=True, cache=True)
def near_fill(queries, offsets, elem_ids, lo, hi, exclude_self,
              nbr_offsets, nbr_ids, nbr_shared):
    """Fill neighbor ids and shared counts for queries in [lo, hi).

    ``nbr_offsets`` is indexed relative to ``lo``.
    """
    tally = np.zeros(5, np.int64)
    for q in range(lo, hi):
        skip = q if exclude_self else -1
        _merge_one(queries, q, offsets, elem_ids, skip,
                   nbr_ids, nbr_shared, nbr_offsets[q - lo], True, tally)
