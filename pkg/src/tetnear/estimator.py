"""scikit-learn style front end.

``NearElementFinder`` is fitted on a mesh (or a bare ``(n_elem, 4)``
connectivity array) and then answers near-element queries, much like
:class:`sklearn.neighbors.NearestNeighbors` does for points.
"""

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .adjacency import (
    DEFAULT_STRIPES,
    BuildStrategy,
    all_near,
    build_incidence,
    elements_of_node,
    near_elements,
    near_elements_classified,
    nearness_tally,
    query_table,
    resolve_index_dtype,
)
from .mesh import Mesh, validate_mesh

__all__ = ["NearElementFinder", "check_elements"]


def check_elements(X, n_node=None):
    """Validate a connectivity array and return it as ``(n, 4)`` int64.

    Parameters
    ----------
    X : array-like of shape (n, 4)
    n_node : int, optional
        If given, every index must be below it.
    """
    X = np.asarray(X)
    if X.size == 0:
        X = X.reshape(0, 4)
    if X.ndim != 2 or X.shape[1] != 4:
        raise ValueError(f"expected an (n, 4) array of node indices, got shape {X.shape}")
    if X.dtype.kind not in "iu":
        if X.dtype.kind != "f" or not np.all(np.isfinite(X)) or np.any(X != np.round(X)):
            raise ValueError("node indices must be integers")
    X = X.astype(np.int64, copy=False)
    if X.size and X.min() < 0:
        raise ValueError("node indices must be non-negative")
    if n_node is not None and X.size and X.max() >= n_node:
        raise ValueError(f"node index {int(X.max())} out of range for {n_node} nodes")
    return np.ascontiguousarray(X)


class NearElementFinder(TransformerMixin, BaseEstimator):
    """Find the elements that share nodes with a given tetrahedron.

    Parameters
    ----------
    strategy : {"countsort", "serial", "locked"}, default="countsort"
        How the node-to-element incidence map is built. All strategies give
        identical results.
    n_jobs : int, optional
        Build threads; ``None`` means one per CPU.
    permissive : bool, default=False
        Accept elements that repeat a node index.
    n_stripes : int, default=1024
        Lock count for the ``locked`` strategy.
    index_dtype : str, default="uint32"
        Integer width of the incidence map.

    Attributes
    ----------
    mesh_ : Mesh
    incidence_ : IncidenceMap
    n_elements_ : int
    n_nodes_ : int

    Examples
    --------
    >>> finder = NearElementFinder().fit([[0, 1, 2, 3], [1, 2, 3, 4]])
    >>> finder.near_elements(0)
    [1]
    """

    def __init__(self, strategy="countsort", n_jobs=None, permissive=False,
                 n_stripes=DEFAULT_STRIPES, index_dtype="uint32"):
        self.strategy = strategy
        self.n_jobs = n_jobs
        self.permissive = permissive
        self.n_stripes = n_stripes
        self.index_dtype = index_dtype

    def fit(self, X, y=None, n_nodes=None):
        """Build the incidence map.

        ``X`` is a :class:`Mesh` or an ``(n_elem, 4)`` connectivity array.
        For a bare array the node count defaults to ``max index + 1`` and the
        coordinates are zero.
        """
        strategy = BuildStrategy(self.strategy)
        resolve_index_dtype(self.index_dtype)
        if self.n_jobs is not None and self.n_jobs < 1:
            raise ValueError(f"n_jobs must be >= 1 or None, got {self.n_jobs}")
        if isinstance(X, Mesh):
            mesh = X
        else:
            elements = check_elements(X)
            if n_nodes is None:
                n_nodes = int(elements.max()) + 1 if elements.size else 0
            mesh = validate_mesh(np.zeros((n_nodes, 3)), elements,
                                 permissive=self.permissive)
        self.mesh_ = mesh
        self.incidence_ = build_incidence(
            mesh, strategy, self.n_jobs, n_stripes=self.n_stripes,
            index_dtype=self.index_dtype,
        )
        self.n_elements_ = mesh.n_elem
        self.n_nodes_ = mesh.n_node
        return self

    def elements_of_node(self, j):
        check_is_fitted(self)
        return elements_of_node(self.incidence_, j)

    def near_elements(self, e):
        check_is_fitted(self)
        return near_elements(self.incidence_, self.mesh_, e)

    def near_elements_classified(self, e):
        check_is_fitted(self)
        return near_elements_classified(self.incidence_, self.mesh_, e)

    def reports(self):
        """Iterate over the neighbor report of every fitted element."""
        check_is_fitted(self)
        return all_near(self.incidence_, self.mesh_)

    def pair_counts(self):
        check_is_fitted(self)
        return nearness_tally(self.incidence_, self.mesh_)

    def transform(self, X):
        """Shared-vertex counts between query tetrahedra and fitted elements.

        Returns a sparse ``(n_queries, n_elements_)`` matrix whose entry
        ``(i, f)`` is the number of nodes query ``i`` shares with element
        ``f``; absent entries are zero. A query identical to a fitted element
        has a 4 in that element's column.
        """
        check_is_fitted(self)
        if isinstance(X, Mesh):
            X = X.elements
        queries = check_elements(X, self.n_nodes_)
        table = query_table(self.incidence_, queries, exclude_self=False)
        return self._to_csr(table, len(queries))

    def near_graph(self):
        """Sparse element-by-element matrix of shared-vertex counts, no diagonal."""
        check_is_fitted(self)
        table = query_table(self.incidence_, self.mesh_.elements)
        return self._to_csr(table, self.n_elements_)

    def _to_csr(self, table, n_rows):
        return sp.csr_matrix(
            (table.shared.astype(np.int8), table.ids, table.offsets),
            shape=(n_rows, self.n_elements_),
        )
