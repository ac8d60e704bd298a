"""Native ASCII mesh format.

::

    # comments and blank lines are ignored
    N_node N_elem
    x y z            (N_node lines)
    j0 j1 j2 j3      (N_elem lines, zero-based node indices)
"""

import numpy as np

from .._errors import (
    DegenerateElement,
    IndexOutOfRange,
    MeshSyntaxError,
    NonFiniteCoordinate,
)
from ..mesh import validate_mesh

__all__ = ["parse_native", "render_native"]


def _records(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        yield lineno, s.split()


def _int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise MeshSyntaxError(lineno, f"{what}: expected an integer, got {tok!r}") from None


def _float(tok, lineno, what):
    try:
        return float(tok)
    except ValueError:
        raise MeshSyntaxError(lineno, f"{what}: expected a number, got {tok!r}") from None


def parse_native(text, permissive=False):
    """Parse native mesh text into a validated :class:`~tetnear.mesh.Mesh`.

    Raises :class:`MeshSyntaxError` for malformed text and the validation
    errors of :func:`~tetnear.mesh.validate_mesh` otherwise; every error
    carries the 1-based ``line`` it refers to.
    """
    records = _records(text)
    last_line = len(text.splitlines())
    try:
        lineno, toks = next(records)
    except StopIteration:
        raise MeshSyntaxError(max(last_line, 1), "missing header 'N_node N_elem'") from None
    if len(toks) != 2:
        raise MeshSyntaxError(lineno, f"header needs 2 fields, got {len(toks)}")
    n_node = _int(toks[0], lineno, "N_node")
    n_elem = _int(toks[1], lineno, "N_elem")
    if n_node < 0 or n_elem < 0:
        raise MeshSyntaxError(lineno, "header counts must be non-negative")

    nodes = np.empty((n_node, 3), np.float64)
    node_lines = [0] * n_node
    elements = np.empty((n_elem, 4), np.int64)
    elem_lines = [0] * n_elem
    for i in range(n_node + n_elem):
        try:
            lineno, toks = next(records)
        except StopIteration:
            what = f"node {i}" if i < n_node else f"element {i - n_node}"
            raise MeshSyntaxError(last_line, f"unexpected end of input, expected {what}") from None
        if i < n_node:
            if len(toks) != 3:
                raise MeshSyntaxError(lineno, f"node {i}: expected 3 coordinates, got {len(toks)}")
            nodes[i] = [_float(t, lineno, f"node {i}") for t in toks]
            node_lines[i] = lineno
        else:
            e = i - n_node
            if len(toks) != 4:
                raise MeshSyntaxError(lineno, f"element {e}: expected 4 node indices, got {len(toks)}")
            elements[e] = [_int(t, lineno, f"element {e}") for t in toks]
            elem_lines[e] = lineno
    extra = next(records, None)
    if extra is not None:
        raise MeshSyntaxError(extra[0], f"unexpected data after {n_elem} elements")

    try:
        return validate_mesh(nodes, elements, permissive=permissive)
    except NonFiniteCoordinate as err:
        raise err.with_line(node_lines[err.node])
    except (IndexOutOfRange, DegenerateElement) as err:
        raise err.with_line(elem_lines[err.elem])


def render_native(mesh):
    """Inverse of :func:`parse_native`; coordinates keep full precision."""
    out = [f"{mesh.n_node} {mesh.n_elem}\n"]
    out.extend("%.17g %.17g %.17g\n" % tuple(p) for p in mesh.nodes.tolist())
    out.extend("%d %d %d %d\n" % tuple(e) for e in mesh.elements.tolist())
    return "".join(out)
