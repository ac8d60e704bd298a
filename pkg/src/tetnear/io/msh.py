"""Reader for the tetrahedra of a Gmsh MSH 2.2 ASCII file.

Only one ``$Nodes`` and one ``$Elements`` block are read. Elements of any type
other than 4 (4-node tetrahedron) are skipped and counted. Gmsh node ids are
1-based and may be sparse; they are remapped to dense zero-based indices in
file order.
"""

import warnings

import numpy as np

from .._errors import (
    DegenerateElement,
    IndexOutOfRange,
    MeshSyntaxError,
    NonFiniteCoordinate,
    UnsupportedVersion,
)
from ..mesh import validate_mesh

__all__ = ["parse_msh22", "GMSH_TETRAHEDRON"]

GMSH_TETRAHEDRON = 4


class _Lines:
    def __init__(self, text):
        self._lines = text.splitlines()
        self.pos = 0

    @property
    def lineno(self):
        return self.pos

    def next(self, expect):
        while self.pos < len(self._lines):
            self.pos += 1
            s = self._lines[self.pos - 1].strip()
            if s:
                return s
        raise MeshSyntaxError(max(self.pos, 1), f"unexpected end of file, expected {expect}")

    def at_end(self):
        return all(not l.strip() for l in self._lines[self.pos:])


def _count(line, lines, what):
    try:
        n = int(line)
    except ValueError:
        raise MeshSyntaxError(lines.lineno, f"{what} count must be an integer, got {line!r}") from None
    if n < 0:
        raise MeshSyntaxError(lines.lineno, f"{what} count must be non-negative")
    return n


def _read_format(lines):
    toks = lines.next("format line").split()
    if len(toks) != 3:
        raise MeshSyntaxError(lines.lineno, "format line needs 'version file-type data-size'")
    if toks != ["2.2", "0", "8"]:
        raise UnsupportedVersion(" ".join(toks), line=lines.lineno)
    if lines.next("$EndMeshFormat") != "$EndMeshFormat":
        raise MeshSyntaxError(lines.lineno, "expected $EndMeshFormat")


def _read_nodes(lines):
    n = _count(lines.next("node count"), lines, "node")
    coords = np.empty((n, 3), np.float64)
    index_of = {}
    line_of = [0] * n
    for i in range(n):
        toks = lines.next("node line").split()
        if len(toks) != 4:
            raise MeshSyntaxError(lines.lineno, f"node line needs 'id x y z', got {len(toks)} fields")
        try:
            node_id = int(toks[0])
            coords[i] = [float(t) for t in toks[1:]]
        except ValueError:
            raise MeshSyntaxError(lines.lineno, "malformed node line") from None
        if node_id in index_of:
            raise MeshSyntaxError(lines.lineno, f"duplicate node id {node_id}")
        index_of[node_id] = i
        line_of[i] = lines.lineno
    if lines.next("$EndNodes") != "$EndNodes":
        raise MeshSyntaxError(lines.lineno, "expected $EndNodes")
    return coords, index_of, line_of


def _read_elements(lines, index_of):
    n = _count(lines.next("element count"), lines, "element")
    tets = []
    line_of = []
    skipped = 0
    for _ in range(n):
        toks = lines.next("element line").split()
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise MeshSyntaxError(lines.lineno, "malformed element line") from None
        if len(vals) < 3 or len(vals) < 3 + vals[2]:
            raise MeshSyntaxError(lines.lineno, "element line too short")
        if vals[1] != GMSH_TETRAHEDRON:
            skipped += 1
            continue
        node_ids = vals[3 + vals[2]:]
        if len(node_ids) != 4:
            raise MeshSyntaxError(lines.lineno, f"tetrahedron needs 4 nodes, got {len(node_ids)}")
        row = []
        for slot, nid in enumerate(node_ids):
            if nid not in index_of:
                raise IndexOutOfRange(len(tets), slot, nid).with_line(lines.lineno)
            row.append(index_of[nid])
        tets.append(row)
        line_of.append(lines.lineno)
    if lines.next("$EndElements") != "$EndElements":
        raise MeshSyntaxError(lines.lineno, "expected $EndElements")
    return tets, line_of, skipped


def _skip_section(lines, name):
    end = "$End" + name[1:]
    while lines.next(end) != end:
        pass


def parse_msh22(text, permissive=False):
    """Parse MSH 2.2 ASCII text.

    Returns
    -------
    mesh : Mesh
        The file's tetrahedra over all of its nodes.
    n_skipped : int
        Number of non-tetrahedral elements ignored.
    """
    lines = _Lines(text)
    if lines.next("$MeshFormat") != "$MeshFormat":
        raise MeshSyntaxError(lines.lineno, "file must start with $MeshFormat")
    _read_format(lines)

    nodes = None
    tets = None
    while not lines.at_end():
        section = lines.next("section")
        if section == "$Nodes":
            if nodes is not None:
                raise MeshSyntaxError(lines.lineno, "only one $Nodes block is supported")
            nodes = _read_nodes(lines)
        elif section == "$Elements":
            if nodes is None:
                raise MeshSyntaxError(lines.lineno, "$Elements before $Nodes")
            if tets is not None:
                raise MeshSyntaxError(lines.lineno, "only one $Elements block is supported")
            tets = _read_elements(lines, nodes[1])
        elif section.startswith("$") and not section.startswith("$End"):
            _skip_section(lines, section)
        else:
            raise MeshSyntaxError(lines.lineno, f"unexpected line {section!r}")

    coords, _, node_lines = nodes if nodes is not None else (np.empty((0, 3)), {}, [])
    elems, elem_lines, skipped = tets if tets is not None else ([], [], 0)
    if skipped:
        warnings.warn(f"skipped {skipped} non-tetrahedral element(s)", stacklevel=2)
    try:
        mesh = validate_mesh(coords, np.array(elems, np.int64).reshape(-1, 4),
                             permissive=permissive)
    except NonFiniteCoordinate as err:
        raise err.with_line(node_lines[err.node])
    except (IndexOutOfRange, DegenerateElement) as err:
        raise err.with_line(elem_lines[err.elem])
    return mesh, skipped
