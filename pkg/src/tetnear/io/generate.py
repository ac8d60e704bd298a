"""Seeded random tetrahedral meshes with bounded node valence.

The stream of random numbers is fully specified so other implementations can
reproduce meshes exactly:

* The 256-bit state of a xoshiro256** generator is filled with four
  consecutive outputs of splitmix64 started at ``seed`` (mod 2**64).
* ``uniform()`` is ``(next() >> 11) * 2**-53``.
* ``below(n)`` draws ``r = next()`` until ``r >= (2**64 - n) % n`` and
  returns ``r % n`` (unbiased).
* Coordinates come first: ``x, y, z = uniform(), uniform(), uniform()`` for
  each node in order.
* Each element is built from four ``below(n_node)`` draws, redrawing a slot
  while it repeats an earlier slot. If any chosen node already has
  ``max_valence`` elements, the whole element is redrawn; 1000 consecutive
  redraws raise :class:`GenerationStalled`.
"""

import numpy as np
from numba import njit

from .._errors import GenerationStalled
from ..mesh import Mesh

__all__ = ["generate_random_mesh", "MAX_REDRAWS"]

MAX_REDRAWS = 1000

_MASK = (1 << 64) - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U = np.uint64


@njit(cache=True)
def _splitmix64(state):
    state[0] += _GOLDEN
    z = state[0]
    z = (z ^ (z >> _U(30))) * _MIX1
    z = (z ^ (z >> _U(27))) * _MIX2
    return z ^ (z >> _U(31))


@njit(cache=True)
def _rotl(x, k):
    return (x << _U(k)) | (x >> _U(64 - k))


@njit(cache=True)
def _next(s):
    result = _rotl(s[1] * _U(5), 7) * _U(9)
    t = s[1] << _U(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


@njit(cache=True)
def _seed(seed_state):
    s = np.empty(4, np.uint64)
    for i in range(4):
        s[i] = _splitmix64(seed_state)
    return s


@njit(cache=True)
def _uniform(s):
    return np.float64(_next(s) >> _U(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def _below(s, n):
    un = _U(n)
    threshold = (_U(0) - un) % un
    while True:
        r = _next(s)
        if r >= threshold:
            return np.int64(r % un)


@njit(cache=True)
def _generate(seed_state, n_node, n_elem, max_valence, max_redraws,
              coords, elements):
    s = _seed(seed_state)
    for i in range(n_node):
        for d in range(3):
            coords[i, d] = _uniform(s)
    valence = np.zeros(n_node, np.int64)
    chosen = np.empty(4, np.int64)
    for e in range(n_elem):
        fails = 0
        while True:
            for k in range(4):
                while True:
                    v = _below(s, n_node)
                    fresh = True
                    for m in range(k):
                        if chosen[m] == v:
                            fresh = False
                    if fresh:
                        break
                chosen[k] = v
            ok = True
            for k in range(4):
                if valence[chosen[k]] >= max_valence:
                    ok = False
            if ok:
                break
            fails += 1
            if fails >= max_redraws:
                return e
        for k in range(4):
            elements[e, k] = chosen[k]
            valence[chosen[k]] += 1
    return -1


def _raw_stream(seed, count):
    """First ``count`` xoshiro256** outputs for ``seed``; used by the tests."""
    s = _seed(np.array([seed & _MASK], np.uint64))
    return [int(_next(s)) for _ in range(count)]


def generate_random_mesh(n_node, n_elem, max_valence, seed):
    """Random mesh whose every node is used by at most ``max_valence`` elements.

    A pure function of its arguments. Coordinates lie in ``[0, 1)**3``.
    """
    if n_node < 4:
        raise ValueError(f"n_node must be >= 4, got {n_node}")
    if n_elem < 0:
        raise ValueError(f"n_elem must be >= 0, got {n_elem}")
    if max_valence < 4:
        raise ValueError(f"max_valence must be >= 4, got {max_valence}")
    coords = np.empty((n_node, 3), np.float64)
    elements = np.empty((n_elem, 4), np.int64)
    stalled = _generate(np.array([seed & _MASK], np.uint64), n_node, n_elem,
                        max_valence, MAX_REDRAWS, coords, elements)
    if stalled >= 0:
        raise GenerationStalled(int(stalled), MAX_REDRAWS)
    return Mesh(coords, elements)
